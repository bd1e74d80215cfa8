"""Tests for backward-Euler stepping and run control."""

from __future__ import annotations

import math

import numpy as np
import pytest

from core.boundary.boundary_data import evaluate_profile
from core.grid.radial_grid import build_graded_grid
from core.solver.flow_solver import SolverStateError, create_run, solve_until, step
from core.solver.snapshots import SnapshotRecorder
from models.boundary_models import BoundaryDataSpec, Constant, FourArctan, StationaryArctan, TimeModulation
from models.flow_models import FlowRun, RunStatus, SolverSettings


def _run(spec: BoundaryDataSpec, n: int = 64, **settings: float) -> FlowRun:
    return create_run(build_graded_grid(n, 2.0), spec, SolverSettings(**settings))  # type: ignore[arg-type]


class TestCreateRun:
    def test_seed_pins_endpoints(self) -> None:
        grid = build_graded_grid(32, 2.0)
        spec = BoundaryDataSpec(kind=StationaryArctan(alpha=1.0, sign=-1, offset_m=1))
        run = create_run(grid, spec, initial=np.zeros(grid.size))
        assert run.profile.origin_value == math.pi
        assert run.profile.boundary_value == pytest.approx(math.pi / 2)
        assert run.status is RunStatus.RUNNING

    def test_rejects_wrong_shape(self) -> None:
        with pytest.raises(SolverStateError, match="shape"):
            create_run(build_graded_grid(32, 2.0), BoundaryDataSpec(kind=FourArctan()), initial=np.zeros(5))

    def test_rejects_non_finite_seed(self) -> None:
        grid = build_graded_grid(32, 2.0)
        seed = np.zeros(grid.size)
        seed[4] = np.nan
        with pytest.raises(SolverStateError, match="non-finite"):
            create_run(grid, BoundaryDataSpec(kind=FourArctan()), initial=seed)

    def test_initial_dt_is_clamped(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1.0, dt_max=0.05)
        assert run.dt == 0.05


class TestStep:
    def test_zero_stays_zero(self) -> None:
        run = _run(BoundaryDataSpec(kind=Constant(0.0)))
        for _ in range(20):
            step(run)
        assert run.step_count == 20
        assert np.all(run.profile.values == 0.0)

    def test_dt_grows_after_accepted_step(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-4)
        step(run)
        assert run.time == pytest.approx(1e-4)
        assert run.dt == pytest.approx(1.2e-4)

    def test_step_lands_on_stop_time(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-2)
        step(run, t_stop=3e-3)
        assert run.time == 3e-3

    def test_boundary_follows_modulated_data(self) -> None:
        spec = BoundaryDataSpec(kind=FourArctan(0.5), modulation=TimeModulation("linear", 0.5))
        run = _run(spec, dt_initial=1e-2)
        step(run)
        expected = float(evaluate_profile(spec, np.array([1.0]), run.time)[0])
        assert run.profile.boundary_value == pytest.approx(expected, abs=1e-15)
        assert run.profile.origin_value == 0.0

    def test_newton_failure_ends_in_step_failure(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-3, dt_min=1e-4, newton_max_iter=0)
        step(run)
        assert run.status is RunStatus.STEP_FAILURE
        assert run.rejected_count == 4
        assert run.event_log[-1].event == "step_failure"
        assert run.time == 0.0

    def test_far_newton_solution_is_rejected(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-2, dt_min=1e-4, max_step_change=1e-9)
        step(run)
        assert run.status is RunStatus.STEP_FAILURE
        assert run.rejected_count == 7
        assert run.time == 0.0

    def test_step_within_change_bound_is_accepted(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-4, max_step_change=math.pi / 4)
        before = run.profile.values
        step(run)
        assert run.rejected_count == 0
        assert np.max(np.abs(run.profile.values - before)) <= math.pi / 4

    def test_cannot_step_finished_run(self) -> None:
        run = _run(BoundaryDataSpec(kind=Constant(0.0)))
        solve_until(run, 0.0)
        with pytest.raises(SolverStateError):
            step(run)


class TestSolveUntil:
    def test_zero_horizon_completes_immediately(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()))
        solve_until(run, 0.0)
        assert run.status is RunStatus.COMPLETED_T
        assert run.step_count == 0
        assert run.event_log[-1].event == "completed"

    def test_horizon_in_the_past(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-2)
        solve_until(run, 0.05)
        with pytest.raises(SolverStateError, match="before"):
            solve_until(run, 0.01)

    def test_completed_run_can_continue(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-2)
        solve_until(run, 0.05)
        solve_until(run, 0.1)
        assert run.time == 0.1
        assert run.status is RunStatus.COMPLETED_T

    def test_fixed_steps_land_on_horizon(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=0.1, dt_max=0.1, dt_growth=1.0)
        solve_until(run, 0.3)
        assert run.time == 0.3
        assert run.step_count == 3
        solve_until(run, 0.7)
        assert run.time == 0.7

    def test_observer_halt(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-3)
        solve_until(run, 1.0, observers=[lambda r: r.step_count >= 3])
        assert run.status is RunStatus.BLOW_UP_DETECTED
        assert run.step_count == 3
        assert run.event_log[-1].event == "halt"

    def test_event_times_non_decreasing(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-2)
        solve_until(run, 0.05)
        solve_until(run, 0.2)
        times = [record.time for record in run.event_log]
        assert times == sorted(times)

    def test_snapshot_recorder(self) -> None:
        run = _run(BoundaryDataSpec(kind=FourArctan()), dt_initial=1e-3)
        recorder = SnapshotRecorder(run, every=2)
        solve_until(run, 0.05, observers=[recorder])
        profiles = recorder.finalize(run)
        assert profiles[0].time == 0.0
        assert profiles[-1].time == 0.05
        assert recorder.times == sorted(recorder.times)
        assert len(profiles) >= run.step_count // 2

    def test_recorder_rejects_bad_interval(self) -> None:
        with pytest.raises(ValueError, match="interval"):
            SnapshotRecorder(_run(BoundaryDataSpec(kind=FourArctan())), every=0)

    def test_recorder_limit_keeps_even_stride(self) -> None:
        run = _run(BoundaryDataSpec(kind=Constant(0.0)), dt_initial=1e-3, dt_max=1e-3)
        recorder = SnapshotRecorder(run, every=1, limit=8)
        solve_until(run, 0.05, observers=[recorder])
        profiles = recorder.finalize(run)
        assert run.step_count == 50
        assert recorder.every == 8
        assert [round(profile.time * 1000) for profile in profiles] == [0, 8, 16, 24, 32, 40, 48, 50]

    def test_recorder_rejects_tiny_limit(self) -> None:
        with pytest.raises(ValueError, match="limit"):
            SnapshotRecorder(_run(BoundaryDataSpec(kind=FourArctan())), limit=1)


def test_four_arctan_rises_and_stays_below_pi() -> None:
    run = _run(BoundaryDataSpec(kind=FourArctan()), n=64, dt_initial=1e-3, dt_max=5e-2)
    recorder = SnapshotRecorder(run)
    solve_until(run, 1.0, observers=[recorder])
    samples = [profile.at(0.5) for profile in recorder.finalize(run)]
    assert np.all(np.diff(samples) >= -1e-9)
    for profile in recorder.profiles:
        assert np.max(np.abs(profile.values)) <= math.pi + 10 * run.newton_tol


def test_theta_drift_stays_small() -> None:
    spec = BoundaryDataSpec(kind=StationaryArctan(alpha=1.0))
    run = _run(spec, n=128, dt_initial=1e-3)
    seed = run.profile.values.copy()
    solve_until(run, 0.3)
    assert np.max(np.abs(run.profile.values - seed)) <= 1e-3


@pytest.mark.slow
def test_theta_drift_at_production_resolution() -> None:
    run = create_run(build_graded_grid(512, 2.0), BoundaryDataSpec(kind=StationaryArctan(alpha=1.0)))
    seed = run.profile.values.copy()
    solve_until(run, 1.0)
    assert run.status is RunStatus.COMPLETED_T
    assert np.max(np.abs(run.profile.values - seed)) <= 1e-3
