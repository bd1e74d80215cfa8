"""Tests for ordering, maximum and barrier checks."""

from __future__ import annotations

import math

import numpy as np
import pytest

from core.checkers.comparison import (
    GridMismatchError,
    SnapshotSeries,
    barrier_check,
    comparison_check,
    comparison_tolerance,
    discrete_maximum_check,
    self_comparison_check,
)
from core.grid.radial_grid import build_graded_grid
from core.solver.flow_solver import create_run, solve_until
from core.solver.snapshots import SnapshotRecorder
from core.stationary.library import StationaryFamily, StationaryProfile, sample
from models.boundary_models import BoundaryDataSpec, FourArctan
from models.flow_models import Profile, SolverSettings
from models.grid_models import RadialGrid
from models.report_models import BarrierFit, Verdict


def _theta(alpha: float, grid: RadialGrid, times: tuple[float, ...] = (0.0,)) -> list[Profile]:
    values, _ = sample(StationaryProfile(StationaryFamily.THETA_ALPHA, alpha=alpha), grid.nodes)
    return [Profile(grid=grid, values=values, time=t, k=1) for t in times]


@pytest.fixture
def grid() -> RadialGrid:
    return build_graded_grid(64, 2.0)


class TestSnapshotSeries:
    def test_interpolates_in_time(self, grid: RadialGrid) -> None:
        series = SnapshotSeries(
            [
                Profile(grid=grid, values=np.zeros(grid.size), time=0.0, k=1),
                Profile(grid=grid, values=np.full(grid.size, 2.0), time=1.0, k=1),
            ]
        )
        np.testing.assert_allclose(series.at(0.25), 0.5)
        np.testing.assert_allclose(series.at(5.0), 2.0)
        assert not series.frozen

    def test_single_profile_is_frozen(self, grid: RadialGrid) -> None:
        series = SnapshotSeries(_theta(1.0, grid))
        assert series.frozen
        assert series.start == -math.inf
        assert series.end == math.inf

    def test_rejects_backward_times(self, grid: RadialGrid) -> None:
        with pytest.raises(ValueError, match="non-decreasing"):
            SnapshotSeries(_theta(1.0, grid, (1.0, 0.0)))

    def test_rejects_empty(self) -> None:
        with pytest.raises(ValueError, match="at least one"):
            SnapshotSeries([])


class TestComparison:
    def test_theta_family_is_ordered(self, grid: RadialGrid) -> None:
        report = comparison_check(_theta(1.0, grid), _theta(2.0, grid), tol=1e-12)
        assert report.verdict is Verdict.ORDERED
        assert report.max_violation == 0.0
        assert report.pairs_checked == grid.size

    def test_reversed_pair_is_violated(self, grid: RadialGrid) -> None:
        report = comparison_check(_theta(2.0, grid), _theta(1.0, grid), tol=1e-12, label="reversed")
        assert report.verdict is Verdict.VIOLATED
        assert report.max_violation > 0.1
        assert 0.0 < report.worst_radius <= 1.0

    def test_transitivity(self, grid: RadialGrid) -> None:
        low, mid, high = _theta(0.5, grid), _theta(1.0, grid), _theta(4.0, grid)
        assert comparison_check(low, mid, 1e-12).ordered
        assert comparison_check(mid, high, 1e-12).ordered
        assert comparison_check(low, high, 1e-12).ordered

    def test_grid_mismatch(self, grid: RadialGrid) -> None:
        with pytest.raises(GridMismatchError):
            comparison_check(_theta(1.0, grid), _theta(1.0, build_graded_grid(32, 2.0)), tol=1e-12)

    def test_disjoint_spans_are_inapplicable(self, grid: RadialGrid) -> None:
        report = comparison_check(_theta(1.0, grid, (0.0, 1.0)), _theta(2.0, grid, (2.0, 3.0)), tol=1e-12)
        assert report.verdict is Verdict.INAPPLICABLE

    def test_flow_stays_below_pi(self, grid: RadialGrid) -> None:
        settings = SolverSettings(dt_initial=1e-3, dt_max=2e-2)
        run = create_run(grid, BoundaryDataSpec(kind=FourArctan()), settings)
        recorder = SnapshotRecorder(run)
        solve_until(run, 0.3, observers=[recorder])
        ceiling = [Profile(grid=grid, values=np.full(grid.size, math.pi), time=0.0, k=1)]
        report = comparison_check(recorder.finalize(run), ceiling, comparison_tolerance(grid, settings.dt_max))
        assert report.ordered
        assert report.pairs_checked == len(recorder.profiles) * grid.size


class TestSelfComparison:
    def test_stationary_run_has_slack_pi(self, grid: RadialGrid) -> None:
        report = self_comparison_check(_theta(1.0, grid, (0.0, 0.1, 0.2, 0.3)), tau=0.1, tol=1e-9)
        assert report.verdict is Verdict.ORDERED
        assert report.max_violation == pytest.approx(-math.pi)

    def test_non_positive_shift(self, grid: RadialGrid) -> None:
        report = self_comparison_check(_theta(1.0, grid, (0.0, 1.0)), tau=0.0, tol=1e-9)
        assert report.verdict is Verdict.INAPPLICABLE

    def test_large_jump_breaks_hypothesis(self, grid: RadialGrid) -> None:
        snapshots = [
            Profile(grid=grid, values=np.zeros(grid.size), time=0.0, k=1),
            Profile(grid=grid, values=np.full(grid.size, 2.0 * math.pi), time=0.05, k=1),
            Profile(grid=grid, values=np.full(grid.size, 2.0 * math.pi), time=0.2, k=1),
        ]
        report = self_comparison_check(snapshots, tau=0.1, tol=1e-9)
        assert report.verdict is Verdict.INAPPLICABLE
        assert "pi" in report.note


class TestDiscreteMaximum:
    def test_theta_keeps_a_margin(self, grid: RadialGrid) -> None:
        report = discrete_maximum_check(_theta(1.0, grid, (0.0, 0.5, 1.0)), level=math.pi, tol=1e-9)
        assert report.verdict is Verdict.PASSED
        assert report.snapshots_checked == 2
        assert report.margin > math.pi / 2

    def test_interior_touching_level(self) -> None:
        uniform = build_graded_grid(64, 1.0)
        bump = np.sin(math.pi * uniform.nodes)
        bump[0] = bump[-1] = 0.0
        snapshots = [Profile(grid=uniform, values=a * bump, time=t, k=1) for a, t in ((0.5, 0.0), (math.pi, 1.0))]
        report = discrete_maximum_check(snapshots, level=math.pi, tol=1e-9)
        assert report.verdict is Verdict.VIOLATED
        assert report.offending_time == 1.0

    def test_interior_may_touch_level_where_boundary_does(self, grid: RadialGrid) -> None:
        values = np.full(grid.size, math.pi)
        values[0] = 0.0
        snapshots = [Profile(grid=grid, values=values, time=t, k=1) for t in (0.0, 1.0)]
        report = discrete_maximum_check(snapshots, level=math.pi, tol=1e-9)
        assert report.verdict is Verdict.PASSED
        assert report.max_interior == math.pi

    def test_interior_above_falling_boundary(self, grid: RadialGrid) -> None:
        raised = np.where(grid.nodes < 1.0, 2.0, 0.5)
        raised[0] = 0.0
        snapshots = [
            Profile(grid=grid, values=np.full(grid.size, 1.0), time=0.0, k=1),
            Profile(grid=grid, values=raised, time=1.0, k=1),
        ]
        report = discrete_maximum_check(snapshots, level=math.pi, tol=1e-9)
        assert report.verdict is Verdict.VIOLATED
        assert report.boundary_max == 1.0

    def test_boundary_above_level(self, grid: RadialGrid) -> None:
        snapshots = [Profile(grid=grid, values=np.full(grid.size, 4.0), time=1.0, k=1)]
        assert discrete_maximum_check(snapshots, level=math.pi, tol=1e-9).verdict is Verdict.INAPPLICABLE

    def test_profile_at_level_is_exempt(self, grid: RadialGrid) -> None:
        snapshots = [Profile(grid=grid, values=np.full(grid.size, math.pi), time=t, k=1) for t in (0.5, 1.0)]
        report = discrete_maximum_check(snapshots, level=math.pi, tol=1e-9)
        assert report.verdict is Verdict.PASSED
        assert report.snapshots_checked == 2


class TestBarrier:
    def test_theta_two_under_theta_four(self, grid: RadialGrid) -> None:
        report = barrier_check(_theta(2.0, grid, (0.0, 1.0)), BarrierFit(alpha0=4.0, r0=1.0), k=1, tol=1e-12)
        assert report.verdict is Verdict.ORDERED
        assert report.pairs_checked == 2 * grid.size

    def test_edge_already_reached(self, grid: RadialGrid) -> None:
        report = barrier_check(_theta(2.0, grid), BarrierFit(alpha0=1.0, r0=1.0), k=1, tol=1e-12)
        assert report.verdict is Verdict.INAPPLICABLE
