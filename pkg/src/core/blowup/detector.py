"""Gradient blow-up detection and front tracking.

The detector is a solver observer: it watches max|h_r| after every accepted step, keeps a buffer of
profiles on a geometric ladder of gradient values and asks the solver to halt once the gradient
passes the effective threshold. A run that ends in StepFailure is concluded as a blow-up as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING, Final

import numpy as np

from core.diagnostics.gradient import sup_gradient
from core.solver.flow_solver import solve_until
from models.flow_models import RunStatus
from models.report_models import BlowUpSummary, FrontSample
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from core.solver.flow_solver import FlowObserver
    from models.flow_models import FlowRun, Profile
    from models.grid_models import RadialGrid

__all__: list[str] = [
    "BlowUpDetector",
    "BlowUpEvent",
    "BlowUpTrigger",
    "FrontTracker",
    "detect_blowup",
    "effective_threshold",
    "front_collapse",
    "r_minus",
    "r_plus",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

CORE_CELLS: Final[int] = 20
FRONT_BAND: Final[float] = 1e-6


class BlowUpTrigger(StrEnum):
    GRADIENT_THRESHOLD = "GradientThreshold"
    STEP_FAILURE = "StepFailure"


@dataclass(frozen=True, eq=False)
class BlowUpEvent:
    """Captured state at detection.

    Attributes:
        detect_time (float): Time of the triggering profile.
        max_gradient (float): max|h_r| of that profile.
        argmax_radius (float): Radius of the maximum.
        trigger (BlowUpTrigger): What fired.
        threshold (float): Effective gradient threshold in use.
        snapshots (tuple[Profile, ...]): Buffered profiles, oldest first; the last one triggered.
        concentrated (bool): argmax radius lies in the smallest decile of the grid.
    """

    detect_time: float
    max_gradient: float
    argmax_radius: float
    trigger: BlowUpTrigger
    threshold: float
    snapshots: tuple[Profile, ...]
    concentrated: bool

    @property
    def last(self) -> Profile:
        return self.snapshots[-1]

    def summary(self) -> BlowUpSummary:
        return BlowUpSummary(
            detect_time=self.detect_time,
            max_gradient=self.max_gradient,
            argmax_radius=self.argmax_radius,
            trigger=str(self.trigger),
            threshold=self.threshold,
            buffered=len(self.snapshots),
            concentrated=self.concentrated,
            buffer_times=[profile.time for profile in self.snapshots],
        )


def effective_threshold(grid: RadialGrid, k: int, g_max: float) -> float:
    """min(G_max, 2k / (CORE_CELLS * dr_min)): the extracted core must span CORE_CELLS innermost cells."""
    return min(g_max, 2.0 * k / (CORE_CELLS * grid.min_spacing))


def r_plus(profile: Profile, level: float = math.pi, eps: float = FRONT_BAND) -> float:
    """sup{r : h <= level on [0, r]}, linear between the last node below and the first node above."""
    values: NDArray[np.float64] = profile.values
    nodes: NDArray[np.float64] = profile.nodes
    above: NDArray[np.intp] = np.flatnonzero(values > level + eps)
    if above.size == 0:
        return 1.0
    first: int = int(above[0])
    if first == 0:
        return 0.0
    v0, v1 = float(values[first - 1]), float(values[first])
    r0, r1 = float(nodes[first - 1]), float(nodes[first])
    fraction: float = min(1.0, max(0.0, (level - v0) / (v1 - v0)))
    return r0 + fraction * (r1 - r0)


def r_minus(profile: Profile, eps: float = FRONT_BAND) -> float:
    return r_plus(profile, math.pi / 2.0, eps)


class FrontTracker:
    """Observer sampling (t, r_plus, r_minus) after every accepted step."""

    def __init__(self, run: FlowRun | None = None) -> None:
        self.samples: list[FrontSample] = []
        if run is not None:
            self.record(run.profile)

    def record(self, profile: Profile) -> FrontSample:
        sample: FrontSample = FrontSample(time=profile.time, r_plus=r_plus(profile), r_minus=r_minus(profile))
        self.samples.append(sample)
        return sample

    def __call__(self, run: FlowRun) -> bool:
        self.record(run.profile)
        return False


def front_collapse(samples: Sequence[FrontSample]) -> bool:
    """True if r_plus drops below its value at the start of the series."""
    if len(samples) < 2:  # noqa: PLR2004
        return False
    return min(sample.r_plus for sample in samples[1:]) < samples[0].r_plus


class BlowUpDetector:
    """Observer that halts the run once max|h_r| exceeds the effective threshold.

    Profiles enter the buffer whenever the gradient has grown by ``growth`` since the last entry; on
    overflow every second entry of the older half is dropped, so older scales thin out geometrically.
    The most recent profile is always kept.
    """

    def __init__(self, run: FlowRun, g_max: float = 1e6, buffer_size: int = 64, growth: float = 1.1) -> None:
        if buffer_size < 2:  # noqa: PLR2004
            msg = f"Blow-up buffer must hold at least two profiles, got {buffer_size}"
            raise ValueError(msg)
        self.threshold: float = effective_threshold(run.grid, run.spec.k, g_max)
        self.buffer_size: int = buffer_size
        self.growth: float = growth
        self.event: BlowUpEvent | None = None
        self._buffer: list[Profile] = []
        self._buffer_gradient: float = 0.0
        self._latest: Profile = run.profile
        self._latest_gradient: tuple[float, float] = sup_gradient(run.profile)
        self._remember(run.profile, self._latest_gradient[0])
        logger.debug("Blow-up threshold %.6g (G_max=%.3g)", self.threshold, g_max)

    def _remember(self, profile: Profile, gradient: float) -> None:
        if self._buffer and gradient < self.growth * self._buffer_gradient:
            return
        self._buffer.append(profile)
        self._buffer_gradient = gradient
        if len(self._buffer) > self.buffer_size:
            half: int = len(self._buffer) // 2
            self._buffer = self._buffer[:half:2] + self._buffer[half:]

    def __call__(self, run: FlowRun) -> bool:
        profile: Profile = run.profile
        gradient, radius = sup_gradient(profile)
        self._latest = profile
        self._latest_gradient = (gradient, radius)
        self._remember(profile, gradient)
        if gradient > self.threshold:
            self.event = self._capture(BlowUpTrigger.GRADIENT_THRESHOLD)
            return True
        return False

    def _capture(self, trigger: BlowUpTrigger) -> BlowUpEvent:
        snapshots: list[Profile] = list(self._buffer)
        if snapshots[-1] is not self._latest:
            snapshots.append(self._latest)
        if len(snapshots) > self.buffer_size:
            snapshots = snapshots[-self.buffer_size :]
        gradient, radius = self._latest_gradient
        event = BlowUpEvent(
            detect_time=self._latest.time,
            max_gradient=gradient,
            argmax_radius=radius,
            trigger=trigger,
            threshold=self.threshold,
            snapshots=tuple(snapshots),
            concentrated=radius <= self._latest.grid.decile_radius(),
        )
        logger.info(
            "Blow-up detected (%s) at t=%.9g: max|h_r|=%.6g at r=%.3e", trigger, event.detect_time, gradient, radius
        )
        if not event.concentrated:
            logger.warning("Gradient maximum at r=%.6g lies outside the smallest grid decile", radius)
        return event

    def conclude(self, run: FlowRun) -> BlowUpEvent | None:
        """The detection event, a StepFailure event, or None for a completed run."""
        if self.event is None and run.status is RunStatus.STEP_FAILURE:
            self.event = self._capture(BlowUpTrigger.STEP_FAILURE)
        return self.event


def detect_blowup(
    run: FlowRun,
    g_max: float,
    horizon: float,
    *,
    buffer_size: int = 64,
    observers: Sequence[FlowObserver] = (),
) -> BlowUpEvent | None:
    """Solve to ``horizon`` with a detector attached; None if the run completes."""
    detector: BlowUpDetector = BlowUpDetector(run, g_max, buffer_size)
    solve_until(run, horizon, observers=[*observers, detector])
    return detector.conclude(run)
