"""Snapshot recording along a run."""

from __future__ import annotations

from typing import TYPE_CHECKING

from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from models.flow_models import FlowRun, Profile

__all__: list[str] = ["SnapshotRecorder"]

logger: logging.Logger = LoggerUtils.get_logger(__name__)


class SnapshotRecorder:
    """Observer that keeps the seed, every ``every``-th accepted profile and (after ``finalize``) the last one.

    At most ``limit`` profiles are held. When the list is full, profiles off the doubled stride are
    dropped and ``every`` doubles, so a long run ends with between limit/2 and limit evenly strided
    snapshots. Never requests a halt.
    """

    def __init__(self, run: FlowRun, every: int = 1, limit: int | None = None) -> None:
        if every < 1:
            msg = f"Snapshot interval must be >= 1, got {every}"
            raise ValueError(msg)
        if limit is not None and limit < 2:  # noqa: PLR2004
            msg = f"Snapshot limit must be >= 2, got {limit}"
            raise ValueError(msg)
        self.every: int = every
        self.limit: int | None = limit
        self.profiles: list[Profile] = [run.profile]
        self._steps: list[int] = [run.step_count]
        self._origin: int = run.step_count

    def __call__(self, run: FlowRun) -> bool:
        if (run.step_count - self._origin) % self.every == 0:
            self.profiles.append(run.profile)
            self._steps.append(run.step_count)
            if self.limit is not None and len(self.profiles) > self.limit:
                self._thin()
        return False

    def _thin(self) -> None:
        self.every *= 2
        kept: list[int] = [i for i, s in enumerate(self._steps) if (s - self._origin) % self.every == 0]
        self.profiles = [self.profiles[i] for i in kept]
        self._steps = [self._steps[i] for i in kept]
        logger.debug("Snapshot limit %s reached; stride now %d", self.limit, self.every)

    def finalize(self, run: FlowRun) -> list[Profile]:
        if self.profiles[-1] is not run.profile and run.time > self.profiles[-1].time:
            self.profiles.append(run.profile)
            self._steps.append(run.step_count)
        return self.profiles

    @property
    def times(self) -> list[float]:
        return [profile.time for profile in self.profiles]
