"""Runtime models of the flow solver.

Profiles are immutable snapshots; a ``FlowRun`` is the mutable state of one simulation and is
owned by a single thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np
from dataclasses_json import DataClassJsonMixin

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from core.solver.operator import RadialStencil
    from models.boundary_models import BoundaryDataSpec
    from models.grid_models import RadialGrid

__all__: list[str] = [
    "EventRecord",
    "FlowRun",
    "Profile",
    "ReconstructedMap",
    "RunStatus",
    "SolverSettings",
]


class RunStatus(StrEnum):
    """Lifecycle of a FlowRun."""

    RUNNING = "Running"
    COMPLETED_T = "CompletedT"
    BLOW_UP_DETECTED = "BlowUpDetected"
    STEP_FAILURE = "StepFailure"


@dataclass(frozen=True, eq=False)
class Profile:
    """Inclination coordinate h sampled on a grid at one instant.

    Attributes:
        grid (RadialGrid): Grid the values live on.
        values (NDArray[np.float64]): h at every node (radians); values[0] is the pinned origin value.
        time (float): Time of the snapshot.
        k (int): Equivariance index.
    """

    grid: RadialGrid
    values: NDArray[np.float64]
    time: float
    k: int

    @property
    def nodes(self) -> NDArray[np.float64]:
        return self.grid.nodes

    @property
    def origin_value(self) -> float:
        return float(self.values[0])

    @property
    def boundary_value(self) -> float:
        return float(self.values[-1])

    def at(self, r: float) -> float:
        """Linear interpolation of h at radius r."""
        return float(np.interp(r, self.grid.nodes, self.values))

    def with_values(self, values: NDArray[np.float64], time: float) -> Profile:
        return Profile(grid=self.grid, values=values, time=time, k=self.k)


@dataclass(frozen=True)
class SolverSettings:
    """Time-stepping and Newton parameters.

    Attributes:
        dt_initial (float): First trial step.
        dt_min (float): Steps are never attempted below this size.
        dt_max (float): Upper bound on the step.
        newton_tol (float): Sup-norm tolerance of the Newton residual.
        newton_max_iter (int): Newton iterations per attempt.
        dt_growth (float): Factor applied to dt after an accepted step.
        max_step_change (float): Largest sup-norm change of an accepted step; larger Newton solutions
            are rejected like a Newton failure.
    """

    dt_initial: float = 1e-6
    dt_min: float = 1e-12
    dt_max: float = 1e-2
    newton_tol: float = 1e-10
    newton_max_iter: int = 30
    dt_growth: float = 1.2
    max_step_change: float = math.pi / 4.0


@dataclass
class EventRecord(DataClassJsonMixin):
    """Entry of a run's event log.

    Attributes:
        time (float): Simulation time of the event.
        event (str): Event name (``step_failure``, ``halt``, ``completed`` ...).
        detail (dict[str, float | str]): Event-specific values.
    """

    time: float
    event: str
    detail: dict[str, float | str] = field(default_factory=dict)


@dataclass
class FlowRun:
    """Evolving state of one simulation.

    Attributes:
        profile (Profile): Current accepted profile.
        spec (BoundaryDataSpec): Boundary data driving the run.
        settings (SolverSettings): Step control parameters.
        dt (float): Step size to try next.
        step_count (int): Accepted steps.
        rejected_count (int): Rejected attempts (Newton failures).
        newton_iterations (int): Newton iterations spent on accepted steps.
        event_log (list[EventRecord]): Time-ordered events.
        status (RunStatus): Lifecycle state.
        stencil (RadialStencil | None): Cached operator weights for the grid.
    """

    profile: Profile
    spec: BoundaryDataSpec
    settings: SolverSettings
    dt: float
    step_count: int = 0
    rejected_count: int = 0
    newton_iterations: int = 0
    event_log: list[EventRecord] = field(default_factory=list)
    status: RunStatus = RunStatus.RUNNING
    stencil: RadialStencil | None = field(default=None, repr=False)

    @property
    def time(self) -> float:
        return self.profile.time

    @property
    def grid(self) -> RadialGrid:
        return self.profile.grid

    @property
    def dt_min(self) -> float:
        return self.settings.dt_min

    @property
    def dt_max(self) -> float:
        return self.settings.dt_max

    @property
    def newton_tol(self) -> float:
        return self.settings.newton_tol

    def log_event(self, event: str, **detail: float | str) -> EventRecord:
        record: EventRecord = EventRecord(time=self.time, event=event, detail=dict(detail))
        self.event_log.append(record)
        return record


@dataclass(frozen=True, eq=False)
class ReconstructedMap:
    """Sphere-valued map rebuilt from h on the theta = 0 slice.

    Attributes:
        vectors (NDArray[np.float64]): (N + 1, 3) unit vectors (sin h, 0, cos h).
        gradient_density (NDArray[np.float64]): |grad v|^2 per node.
        k (int): Equivariance index for the angular reconstruction.
    """

    vectors: NDArray[np.float64]
    gradient_density: NDArray[np.float64]
    k: int

    def norm_defect(self) -> float:
        """Largest deviation of a vector norm from 1."""
        return float(np.max(np.abs(np.linalg.norm(self.vectors, axis=1) - 1.0)))

    def at_angle(self, theta: float) -> NDArray[np.float64]:
        """Vectors (cos(k*theta) sin h, sin(k*theta) sin h, cos h) on the ray at angle theta."""
        rotated: NDArray[np.float64] = self.vectors.copy()
        rotated[:, 0] = np.cos(self.k * theta) * self.vectors[:, 0]
        rotated[:, 1] = np.sin(self.k * theta) * self.vectors[:, 0]
        return rotated
