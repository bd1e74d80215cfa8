"""Intersection-chain audit: knot fixtures, greedy against exhaustive matching, and M along a run.

Fixtures are k = 1 profiles; their knots sit at heights that only make sense for the k = 1 references.
They are evaluated on a fixed uniform grid that holds every knot radius, so their chain lengths do not
depend on the configured resolution.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Final, override

import numpy as np

from core.checkers.chains import (
    P_PATTERN,
    Q_PATTERN,
    chain_alpha_monotonicity,
    chain_band,
    chain_monotonicity,
    classify,
    exhaustive_chain_length,
    longest_chain,
    max_chain_P,
    max_chain_Q,
)
from core.grid.radial_grid import build_graded_grid
from core.scenarios.base import ScenarioBase
from core.stationary.library import StationaryFamily, StationaryProfile, sample
from models.boundary_models import BoundaryDataSpec, Constant
from models.flow_models import Profile
from models.report_models import ChainReport
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from numpy.typing import NDArray

    from models.grid_models import RadialGrid
    from models.report_models import ChainInapplicable, ScenarioResult

__all__: list[str] = ["ChainAuditScenario", "knot_profile"]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

KNOTS: Final[tuple[tuple[float, ...], tuple[float, ...]]] = ((0.0, 0.3, 0.6, 1.0), (0.0, 3.3, 1.0, 3.4))
DIPPED: Final[tuple[tuple[float, ...], tuple[float, ...]]] = ((0.0, 0.3, 0.6, 0.8, 1.0), (0.0, 3.3, 1.0, 0.05, 3.4))
EVOLVING: Final[tuple[tuple[float, ...], tuple[float, ...]]] = ((0.0, 0.3, 0.6, 0.9, 1.0), (0.0, 3.3, 1.0, 3.4, 0.0))
ALPHA_LADDER: Final[tuple[float, ...]] = (4.0, 8.0, 16.0, 32.0)
RANDOM_PROFILES: Final[int] = 200
RANDOM_KNOTS: Final[int] = 7
RANDOM_NODES: Final[int] = 64
RANDOM_CEILING: Final[float] = 4.0
EVOLVING_HORIZON: Final[float] = 0.1
FIXTURE_NODES: Final[int] = 1000


def knot_profile(grid: RadialGrid, knots: tuple[tuple[float, ...], tuple[float, ...]], k: int = 1) -> Profile:
    """Piecewise linear profile through (radius, value) knots."""
    radii, values = knots
    return Profile(grid=grid, values=np.interp(grid.nodes, radii, values), time=0.0, k=k)


class ChainAuditScenario(ScenarioBase):
    @staticmethod
    @override
    def fetch_scenario_name() -> str:
        return "chain-audit"

    def _fixture(
        self, result: ScenarioResult, name: str, outcome: ChainReport | ChainInapplicable, expected: int
    ) -> list[ChainReport]:
        if not isinstance(outcome, ChainReport):
            result.add(name, passed=False, detail=outcome.reason)
            return []
        result.add(name, outcome.max_length == expected, float(outcome.max_length), f"expected M={expected}")
        return [outcome]

    def _random_suite(self) -> int:
        """Profiles where the greedy P or Q length differs from the exhaustive one."""
        rng: np.random.Generator = np.random.default_rng(self.settings.seed)
        grid: RadialGrid = build_graded_grid(RANDOM_NODES, 1.0)
        band: float = chain_band(self.settings.solver.newton_tol)
        radii: NDArray[np.float64] = np.linspace(0.0, 1.0, RANDOM_KNOTS)
        chi, _ = sample(StationaryProfile(StationaryFamily.CHI_ALPHA, alpha=self.checks.CHAIN_ALPHA), grid.nodes[1:])
        half: NDArray[np.float64] = np.full(grid.n, math.pi / 2.0)
        level: NDArray[np.float64] = np.full(grid.n, math.pi)

        mismatches: int = 0
        for _ in range(RANDOM_PROFILES):
            heights: NDArray[np.float64] = rng.uniform(0.0, RANDOM_CEILING, RANDOM_KNOTS)
            heights[0] = 0.0
            values: NDArray[np.float64] = np.interp(grid.nodes[1:], radii, heights)
            for lower, pattern in ((chi, P_PATTERN), (half, Q_PATTERN)):
                classes = classify(values, lower, level, band)
                greedy: int = int(longest_chain(classes, pattern).size)
                if greedy != exhaustive_chain_length(classes.tolist(), pattern):
                    mismatches += 1
        return mismatches

    @override
    def execute(self, result: ScenarioResult) -> str:
        alpha: float = self.checks.CHAIN_ALPHA
        fixture_grid: RadialGrid = build_graded_grid(FIXTURE_NODES, 1.0)
        knots: Profile = knot_profile(fixture_grid, KNOTS)
        dipped: Profile = knot_profile(fixture_grid, DIPPED)

        fixtures: list[ChainReport] = []
        fixtures += self._fixture(result, "knot_q_chain", max_chain_Q(knots), 3)
        fixtures += self._fixture(result, "knot_p_chain", max_chain_P(knots, alpha), 1)
        fixtures += self._fixture(result, "dipped_p_chain", max_chain_P(dipped, alpha), 5)

        lengths, monotone = chain_alpha_monotonicity(dipped, ALPHA_LADDER)
        result.add("alpha_monotone", monotone, detail=" ".join(str(m) for m in lengths))

        mismatches: int = self._random_suite()
        result.add("greedy_matches_exhaustive", mismatches == 0, float(mismatches), f"{RANDOM_PROFILES} profiles")

        seed: Profile = knot_profile(self.grid, EVOLVING)
        spec = BoundaryDataSpec(kind=Constant(value=0.0), k=1)
        run = self.new_run(spec, initial=seed.values)
        evolution = self.evolve(run, horizon=min(self.settings.horizon, EVOLVING_HORIZON))
        result.add("solver_completed", evolution.completed, detail=str(run.status))
        every: int = self.chain_every(evolution)
        series, along = chain_monotonicity(evolution.snapshots, "Q", every=every)
        result.add_verdict("q_chain_monotone", series.verdict)
        reports: list[ChainReport] = fixtures + along

        result.add("parity", all(report.parity_ok for report in reports), float(len(reports)))
        result.add("energy_bounded", all(report.energy_bounded() for report in reports))

        self.writer.write_json("fixtures.json", fixtures)
        ladder: dict[str, int] = {f"{a:g}": m for a, m in zip(ALPHA_LADDER, lengths, strict=True)}
        self.writer.write_json("chains.json", {"series": series, "alpha_ladder": ladder})
        self.write_evolution("evolving_", evolution)
        result.scalars.update(
            {
                "random_mismatches": float(mismatches),
                "initial_q_length": float(series.lengths[0]) if series.lengths else 0.0,
                "final_q_length": float(series.lengths[-1]) if series.lengths else 0.0,
            }
        )
        return str(run.status)
