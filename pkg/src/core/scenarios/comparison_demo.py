"""Ordered pairs of stationary profiles and evolving runs stay ordered."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, override

import numpy as np

from core.boundary.boundary_data import build_parabolic_boundary
from core.checkers.comparison import barrier_check, comparison_check
from core.scenarios.base import ScenarioBase
from core.stationary.library import StationaryFamily, StationaryProfile, barrier_fit, sample
from models.boundary_models import BoundaryDataSpec, FourArctan
from models.flow_models import Profile
from models.report_models import BarrierFit, Verdict

if TYPE_CHECKING:
    from collections.abc import Sequence

    from models.report_models import OrderingReport, ScenarioResult

__all__: list[str] = ["ComparisonScenario"]


class ComparisonScenario(ScenarioBase):
    """Five ordered pairs, one transitivity check and a barrier re-check.

    Frozen profiles count as series constant in time; a pair whose data is not ordered on the
    parabolic boundary is reported as a failed precondition.
    """

    @staticmethod
    @override
    def fetch_scenario_name() -> str:
        return "comparison-demo"

    def _theta(self, alpha: float) -> tuple[BoundaryDataSpec, list[Profile]]:
        member = StationaryProfile(StationaryFamily.THETA_ALPHA, alpha=alpha, k=self.settings.k)
        values, _ = sample(member, self.grid.nodes)
        return member.as_spec(), [Profile(grid=self.grid, values=values, time=0.0, k=self.settings.k)]

    def _four_arctan(self, result: ScenarioResult, alpha: float) -> tuple[BoundaryDataSpec, list[Profile]]:
        spec = BoundaryDataSpec(kind=FourArctan(alpha=alpha), k=self.settings.k)
        evolution = self.evolve(self.new_run(spec))
        result.add(f"FourArctan({alpha:g}) completed", evolution.completed, detail=str(evolution.run.status))
        return spec, evolution.snapshots

    def _pair(
        self,
        result: ScenarioResult,
        label: str,
        lower: tuple[BoundaryDataSpec, Sequence[Profile]],
        upper: tuple[BoundaryDataSpec, Sequence[Profile]],
    ) -> OrderingReport:
        tol: float = self.tolerance()
        horizon: float = self.settings.horizon
        ordered_data: bool = build_parabolic_boundary(lower[0], self.grid, horizon).lies_below(
            build_parabolic_boundary(upper[0], self.grid, horizon), self.checks.TOL_BAND
        )
        report = comparison_check(lower[1], upper[1], tol, label=label)
        detail: str = str(report.verdict) if ordered_data else "data not ordered on the parabolic boundary"
        result.add(label, ordered_data and report.ordered, report.max_violation, detail)
        return report

    @override
    def execute(self, result: ScenarioResult) -> str:
        k: int = self.settings.k
        theta_half = self._theta(0.5)
        theta_one = self._theta(1.0)
        theta_four = self._theta(4.0)
        pi_spec = StationaryProfile(StationaryFamily.CONSTANT_M_PI, m=1, k=k).as_spec()
        pi_level = (pi_spec, [Profile(grid=self.grid, values=np.full(self.grid.size, math.pi), time=0.0, k=k)])
        run_one = self._four_arctan(result, 1.0)
        run_half = self._four_arctan(result, 0.5)

        reports: list[OrderingReport] = [
            self._pair(result, "theta(0.5) <= theta(1)", theta_half, theta_one),
            self._pair(result, "theta(1) <= theta(4)", theta_one, theta_four),
            self._pair(result, "FourArctan(1) <= pi", run_one, pi_level),
            self._pair(result, "FourArctan(0.5) <= FourArctan(1)", run_half, run_one),
            self._pair(result, "FourArctan(0.5) <= theta(4)", run_half, theta_four),
            self._pair(result, "transitivity theta(0.5) <= theta(4)", theta_half, theta_four),
        ]

        fit = barrier_fit(run_half[1][0])
        if isinstance(fit, BarrierFit):
            barrier = barrier_check(run_half[1], fit, k, self.tolerance())
            result.add("barrier", barrier.verdict is not Verdict.VIOLATED, barrier.max_violation, barrier.label)
            reports.append(barrier)
            result.scalars["barrier_alpha0"] = fit.alpha0
            result.scalars["barrier_r0"] = fit.r0
        else:
            result.add("barrier", passed=False, detail=f"no barrier: {fit.reason}")

        self.writer.write_json("comparisons.json", reports)
        self.writer.write_snapshots("four_arctan_1.csv", run_one[1])
        self.writer.write_snapshots("four_arctan_0.5.csv", run_half[1])
        result.scalars["tolerance"] = self.tolerance()
        result.scalars["worst_violation"] = max(report.max_violation for report in reports)
        return "n/a"
