"""Backward-Euler time stepping with Newton iteration and adaptive step control.

Each step solves u - dt * tau(u) = h^n on the interior nodes. The origin node is pinned to the
multiple of pi carried by the boundary data and the node r = 1 follows h0(1, t + dt).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Final, Protocol

import numpy as np
from scipy.linalg import solve_banded

from core.boundary.boundary_data import evaluate_boundary, evaluate_profile
from core.solver.operator import RadialStencil
from models.flow_models import FlowRun, Profile, RunStatus, SolverSettings
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

    from models.boundary_models import BoundaryDataSpec
    from models.grid_models import RadialGrid

__all__: list[str] = [
    "FlowObserver",
    "SolverStateError",
    "create_run",
    "solve_until",
    "step",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

BOUNDARY_MISMATCH: Final[float] = 1e-12
TIME_EPSILON: Final[float] = 1e-14


class SolverStateError(RuntimeError):
    """A run was used in a state that does not allow the requested operation."""


class FlowObserver(Protocol):
    """Receives the run after every accepted step; returning True requests a halt."""

    def __call__(self, run: FlowRun) -> bool: ...


@dataclass(frozen=True)
class _NewtonOutcome:
    converged: bool
    values: NDArray[np.float64]
    iterations: int
    residual: float


def create_run(
    grid: RadialGrid,
    spec: BoundaryDataSpec,
    settings: SolverSettings | None = None,
    *,
    initial: ArrayLike | None = None,
    time: float = 0.0,
) -> FlowRun:
    """Seed a run from the boundary data (or from explicit initial values).

    The origin value is pinned to m*pi and the value at r = 1 to h0(1, time).

    Raises:
        SolverStateError: If the initial values do not match the grid or are not finite.
    """
    settings = settings or SolverSettings()
    values: NDArray[np.float64]
    if initial is None:
        values = evaluate_profile(spec, grid.nodes, time)
    else:
        values = np.array(initial, dtype=np.float64)
    if values.shape != grid.nodes.shape:
        msg = f"Initial profile has shape {values.shape}, grid expects {grid.nodes.shape}"
        raise SolverStateError(msg)
    if not np.all(np.isfinite(values)):
        msg = "Initial profile contains non-finite values"
        raise SolverStateError(msg)

    pinned_left: float = spec.origin_value
    pinned_right: float = evaluate_boundary(spec, 1.0, time)
    if abs(values[0] - pinned_left) > BOUNDARY_MISMATCH or abs(values[-1] - pinned_right) > BOUNDARY_MISMATCH:
        logger.debug(
            "Seed endpoints (%.6g, %.6g) replaced by boundary data (%.6g, %.6g)",
            values[0],
            values[-1],
            pinned_left,
            pinned_right,
        )
    values[0] = pinned_left
    values[-1] = pinned_right

    dt: float = min(max(settings.dt_initial, settings.dt_min), settings.dt_max)
    return FlowRun(
        profile=Profile(grid=grid, values=values, time=time, k=spec.k),
        spec=spec,
        settings=settings,
        dt=dt,
        stencil=RadialStencil.from_grid(grid, spec.k),
    )


def _newton_solve(run: FlowRun, stencil: RadialStencil, dt: float) -> _NewtonOutcome:
    settings: SolverSettings = run.settings
    previous: NDArray[np.float64] = run.profile.values
    trial: NDArray[np.float64] = previous.copy()
    trial[-1] = evaluate_boundary(run.spec, 1.0, run.time + dt)
    previous_interior: NDArray[np.float64] = previous[1:-1]

    residual: float = np.inf
    for iteration in range(settings.newton_max_iter + 1):
        equation: NDArray[np.float64] = trial[1:-1] - previous_interior - dt * stencil.apply(trial)
        residual = float(np.max(np.abs(equation)))
        if not np.isfinite(residual):
            break
        if residual < settings.newton_tol:
            return _NewtonOutcome(converged=True, values=trial, iterations=iteration, residual=residual)
        if iteration == settings.newton_max_iter:
            break
        try:
            update: NDArray[np.float64] = solve_banded(
                (1, 1), stencil.implicit_bands(trial, dt), -equation, check_finite=False
            )
        except (np.linalg.LinAlgError, ValueError):
            break
        trial[1:-1] += update
        update_size: float = float(np.max(np.abs(update)))
        if not np.isfinite(update_size):
            break
        # residual floor from cancellation in dt * tau near the origin
        if update_size <= settings.newton_tol * (1.0 + float(np.max(np.abs(trial)))):
            return _NewtonOutcome(converged=True, values=trial, iterations=iteration + 1, residual=residual)

    return _NewtonOutcome(converged=False, values=trial, iterations=settings.newton_max_iter, residual=residual)


def step(run: FlowRun, *, t_stop: float | None = None) -> FlowRun:
    """Advance one accepted backward-Euler step, halving dt on Newton failure.

    A converged Newton solution that moves some node by more than ``max_step_change`` counts as a
    failure too: near a blow-up Newton can settle on a far-away branch of the nonlinear system.

    On success dt grows by ``dt_growth`` up to ``dt_max``. If halving drives dt below ``dt_min`` the
    run ends with status StepFailure.

    Args:
        run (FlowRun): Run in status Running.
        t_stop (float | None): Optional time the step must not overshoot.

    Returns:
        FlowRun: The same run, updated in place.

    Raises:
        SolverStateError: If the run is not Running.
    """
    if run.status is not RunStatus.RUNNING:
        msg = f"Cannot step a run in status {run.status}"
        raise SolverStateError(msg)
    if run.stencil is None:
        run.stencil = RadialStencil.from_grid(run.grid, run.spec.k)

    start: float = run.time
    while True:
        dt_try: float = run.dt if t_stop is None else min(run.dt, t_stop - start)
        outcome: _NewtonOutcome = _newton_solve(run, run.stencil, dt_try)
        if outcome.converged:
            change: float = float(np.max(np.abs(outcome.values - run.profile.values)))
            if change <= run.settings.max_step_change:
                break
            logger.debug(
                "Newton solution at t=%.9g (dt=%.3e) moves %.3g; rejecting and halving dt", start, dt_try, change
            )
        else:
            logger.debug(
                "Newton failed at t=%.9g (dt=%.3e, residual=%.3e); halving dt", start, dt_try, outcome.residual
            )

        run.rejected_count += 1
        run.dt = dt_try / 2.0
        if run.dt < run.dt_min:
            run.status = RunStatus.STEP_FAILURE
            run.log_event("step_failure", dt=run.dt, residual=outcome.residual)
            logger.warning("Step failure at t=%.9g: dt fell below %.1e", start, run.dt_min)
            return run

    new_time: float = start + dt_try
    if t_stop is not None and t_stop - new_time <= TIME_EPSILON * max(1.0, abs(t_stop)):
        new_time = t_stop
    run.profile = run.profile.with_values(outcome.values, new_time)
    run.step_count += 1
    run.newton_iterations += outcome.iterations
    run.dt = min(max(run.dt, dt_try) * run.settings.dt_growth, run.dt_max)
    return run


def solve_until(run: FlowRun, horizon: float, observers: Sequence[FlowObserver] = ()) -> FlowRun:
    """Step until ``horizon``, a status change or an observer halt.

    Every observer sees each accepted profile. A halt request ends the run as BlowUpDetected.

    Raises:
        SolverStateError: If ``horizon`` lies before the current time or the run has already ended
            in failure or blow-up.
    """
    if horizon < run.time - TIME_EPSILON:
        msg = f"Horizon {horizon} lies before the current time {run.time}"
        raise SolverStateError(msg)
    if run.status is RunStatus.COMPLETED_T:
        run.status = RunStatus.RUNNING
    if run.status is not RunStatus.RUNNING:
        msg = f"Cannot continue a run in status {run.status}"
        raise SolverStateError(msg)

    while horizon - run.time > TIME_EPSILON * max(1.0, abs(horizon)):
        step(run, t_stop=horizon)
        if run.status is not RunStatus.RUNNING:
            break
        halts: list[bool] = [observer(run) for observer in observers]
        if any(halts):
            run.status = RunStatus.BLOW_UP_DETECTED
            run.log_event("halt", step=run.step_count)
            logger.info("Run halted by observer at t=%.9g after %d steps", run.time, run.step_count)
            break

    if run.status is RunStatus.RUNNING:
        if run.time != horizon:
            run.profile = run.profile.with_values(run.profile.values, horizon)
        run.status = RunStatus.COMPLETED_T
        run.log_event("completed", steps=run.step_count, rejected=run.rejected_count)
    return run
