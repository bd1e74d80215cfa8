"""Global run from time-independent data bounded by pi: the solution exists for all time and
concentrates at the origin as t grows.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Final, override

import numpy as np

from core.blowup.bubbles import BlowUpAnalysisError, fit_bubble
from core.blowup.detector import BlowUpDetector
from core.boundary.boundary_data import validate_spec
from core.checkers.chains import chain_monotonicity
from core.checkers.comparison import comparison_check, discrete_maximum_check, self_comparison_check
from core.diagnostics.monotonicity import min_radial_increment, min_time_derivative, growth_at_radius
from core.scenarios.base import ScenarioBase, ScenarioError
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from core.scenarios.base import Evolution
    from models.flow_models import Profile
    from models.report_models import BubbleFit, ScenarioResult

__all__: list[str] = ["GlobalFlowScenario"]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

GROWTH_RADIUS: Final[float] = 0.5
MIN_GROWTH: Final[float] = 0.05
FIT_TOLERANCE: Final[float] = 0.05
DISSIPATION_SLACK: Final[float] = 0.05


def _constant(template: Profile, value: float) -> Profile:
    return template.with_values(np.full_like(template.values, value), template.time)


class GlobalFlowScenario(ScenarioBase):
    @staticmethod
    @override
    def fetch_scenario_name() -> str:
        return "global-infinity"

    @override
    def execute(self, result: ScenarioResult) -> str:
        spec = self.settings.spec
        if not spec.time_independent:
            msg = f"Scenario 'global-infinity' needs time-independent data, got {spec.describe()}"
            raise ScenarioError(msg)
        validation = validate_spec(spec, self.grid, self.settings.horizon)
        self.writer.write_json("validation.json", validation)
        result.add("data_bounded_by_pi", validation.bounded_by_pi, validation.sup_abs)
        if validation.subsolution_seed is False:
            logger.warning("Seed of %s is not a sub-solution; h_t >= 0 is not expected", spec.describe())

        run = self.new_run()
        detector = BlowUpDetector(run, self.checks.G_MAX, self.checks.BUFFER_SIZE)
        evolution: Evolution = self.evolve(run, observers=[detector])
        event = detector.conclude(run)
        snapshots: list[Profile] = evolution.snapshots
        band: float = self.checks.TOL_BAND

        result.add("solver_completed", evolution.completed, detail=str(run.status))
        result.add("no_blowup", event is None, detail="" if event is None else f"t={event.detect_time:.9g}")

        slowest: float = min_time_derivative(snapshots)
        result.add("time_monotone", slowest >= -band, slowest)
        flattest: float = min_radial_increment(snapshots)
        result.add("radial_monotone", flattest > -band, flattest)

        multiple: int = self.settings.bound_multiple
        seed: Profile = snapshots[0]
        floor: float = -multiple * math.pi if float(np.min(seed.values)) < 0.0 else 0.0
        lower = comparison_check([_constant(seed, floor)], snapshots, band, label=f"{floor:.6g} <= h")
        upper = comparison_check(snapshots, [_constant(seed, multiple * math.pi)], band, label=f"h <= {multiple}*pi")
        result.add("lower_bound", lower.ordered, lower.max_violation)
        result.add("upper_bound", upper.ordered, upper.max_violation)

        maximum = discrete_maximum_check(snapshots, multiple * math.pi, band)
        result.add_verdict("maximum_principle", maximum.verdict, maximum.margin)

        ledger = evolution.ledger
        result.add("energy_non_increasing", ledger.non_increasing(band))
        result.add("energy_flux_bounded", ledger.flux_bounded(band), ledger.max_flux)
        result.add(
            "dissipation_within_budget",
            ledger.dissipation_within_budget(band, relative=DISSIPATION_SLACK),
            ledger.cumulative_dissipation,
        )

        growth: float = growth_at_radius(snapshots, GROWTH_RADIUS)
        result.add(
            "growth_at_radius", growth >= MIN_GROWTH, growth, f"h({GROWTH_RADIUS:g}) must rise by {MIN_GROWTH:g}"
        )

        core: BubbleFit | None = None
        try:
            core = fit_bubble(snapshots[-1], min_gradient=0.0)
        except BlowUpAnalysisError as err:
            result.add("core_fit", passed=False, detail=str(err))
        else:
            result.add("core_fit", core.relative_error <= FIT_TOLERANCE, core.relative_error)
            self.writer.write_json("core_fit.json", core)

        shifted = self_comparison_check(snapshots, self.checks.TAU_SHIFT, self.tolerance())
        result.add_verdict("self_comparison", shifted.verdict, shifted.max_violation, shifted.note)

        every: int = self.chain_every(evolution)
        series, chains = chain_monotonicity(snapshots, "Q", every=every)
        result.add_verdict("q_chain_monotone", series.verdict)

        self.writer.write_json("bounds.json", [lower, upper])
        self.writer.write_json("maximum.json", maximum)
        self.writer.write_json("chains.json", {"series": series, "reports": chains})
        self.writer.write_json("gradient_scaling.json", evolution.gradient.scaling)

        result.scalars.update(
            {
                "energy_initial": ledger.initial_energy,
                "energy_final": ledger.energies[-1],
                "cumulative_dissipation": ledger.cumulative_dissipation,
                "max_gradient": max(evolution.gradient.running_max, default=0.0),
                "growth_at_radius": growth,
                "min_time_derivative": slowest,
                "steps": float(run.step_count),
            }
        )
        result.scalars.update({f"gradient_scaling_{lam}": value for lam, value in evolution.gradient.scaling.items()})
        if core is not None:
            result.scalars["core_alpha"] = core.physical_alpha
        self.write_evolution("", evolution)
        return str(run.status)
