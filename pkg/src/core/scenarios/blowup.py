"""Finite-time blow-up: detect gradient concentration, then read off exactly one bubble at the origin."""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING, Final, override

from core.blowup.bubbles import (
    BlowUpAnalysisError,
    bubble_count,
    extract_bubble,
    fit_bubble,
    last_smooth_index,
    limsup_check,
    origin_limit_check,
    rescaled_profile,
    smooth_core,
)
from core.blowup.detector import BlowUpDetector, front_collapse
from core.boundary.boundary_data import validate_spec
from core.checkers.chains import chain_monotonicity
from core.checkers.comparison import self_comparison_check
from core.diagnostics.gradient import sup_gradient
from core.scenarios.base import ScenarioBase
from models.boundary_models import LinearRamp
from models.report_models import Verdict
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from core.blowup.detector import BlowUpEvent
    from core.scenarios.base import Evolution
    from models.boundary_models import BoundaryDataSpec
    from models.flow_models import Profile
    from models.report_models import BubbleCount, BubbleFit, ScenarioResult

__all__: list[str] = ["BlowUpScenario"]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

FIT_TOLERANCE: Final[float] = 0.05
INCONCLUSIVE_SLOPE: Final[str] = "Inconclusive-slope"


class BlowUpScenario(ScenarioBase):
    @staticmethod
    @override
    def fetch_scenario_name() -> str:
        return "finite-time-blowup"

    def _attempt(self, spec: BoundaryDataSpec) -> tuple[Evolution, BlowUpEvent | None]:
        run = self.new_run(spec)
        detector = BlowUpDetector(run, self.checks.G_MAX, self.checks.BUFFER_SIZE)
        evolution: Evolution = self.evolve(run, observers=[detector])
        return evolution, detector.conclude(run)

    @override
    def execute(self, result: ScenarioResult) -> str:
        spec: BoundaryDataSpec = self.settings.spec
        self.writer.write_json("validation.json", validate_spec(spec, self.grid, self.settings.horizon))
        evolution, event = self._attempt(spec)

        if event is None and isinstance(spec.kind, LinearRamp):
            fallback: float = self.checks.FALLBACK_SLOPE
            logger.warning(
                "%s: no blow-up at slope %g before T=%g, retrying at slope %g",
                INCONCLUSIVE_SLOPE,
                spec.kind.slope,
                self.settings.horizon,
                fallback,
            )
            result.scalars["inconclusive_slope"] = spec.kind.slope
            spec = dataclasses.replace(spec, kind=LinearRamp(slope=fallback))
            evolution, event = self._attempt(spec)
            result.scalars["fallback_slope"] = fallback

        run = evolution.run
        self.write_evolution("", evolution)
        if event is None:
            result.add("blowup_detected", passed=False, detail=INCONCLUSIVE_SLOPE)
            return str(run.status)

        result.add("blowup_detected", passed=True, value=event.detect_time, detail=str(event.trigger))
        result.add("concentrated", event.concentrated, event.argmax_radius)
        self.writer.write_json("blowup.json", event.summary())

        smooth: list[Profile] = [profile for profile in event.snapshots if smooth_core(profile)]
        smooth = smooth or list(event.snapshots)
        if len(smooth) < len(event.snapshots):
            logger.warning(
                "%d of %d buffered snapshots oscillate at the origin and are left out of the analysis",
                len(event.snapshots) - len(smooth),
                len(event.snapshots),
            )
        separated: list[Profile] = [
            profile for profile in smooth if sup_gradient(profile)[0] >= self.checks.MIN_SCALE_GRADIENT
        ] or [smooth[-1]]
        counts: list[BubbleCount] = [bubble_count(profile) for profile in separated]
        result.add("single_bubble", all(count.count == 1 for count in counts), float(max(c.count for c in counts)))
        self.writer.write_json("bubbles.json", counts)

        fits: list[BubbleFit] = []
        for profile in separated[:-1]:
            try:
                fits.append(fit_bubble(profile, self.checks.MIN_SCALE_GRADIENT))
            except BlowUpAnalysisError as err:
                logger.debug("No fit at t=%.9g: %s", profile.time, err)

        final: BubbleFit | None = None
        fitted: Profile = smooth[-1]
        try:
            index: int = last_smooth_index(event)
            fitted = event.snapshots[index]
            final = extract_bubble(event, index, self.checks.MIN_SCALE_GRADIENT)
        except BlowUpAnalysisError as err:
            result.add("bubble_fit", passed=False, detail=str(err))
        else:
            fits.append(final)
            result.add("bubble_fit", final.relative_error <= FIT_TOLERANCE, final.relative_error)
            rho, values = rescaled_profile(fitted, final.scale)
            self.writer.write_series(
                "rescaled.csv",
                ({"rho": float(x), "h": float(v)} for x, v in zip(rho, values, strict=True)),
                ["rho", "h"],
            )
        self.writer.write_json("fits.json", fits)

        # the fitted transit radius tracks the bubble even when the first cells run ahead of it
        scale: float = final.bubble_scale if final is not None else 2.0 * spec.k / sup_gradient(fitted)[0]
        expected: int | None = final.m_offset + final.sign if final is not None else None
        origin = origin_limit_check(fitted, scale, expected=expected)
        result.add("origin_limit", origin.verdict is Verdict.PASSED, origin.deviation, str(origin.verdict))
        limsup = limsup_check(smooth, reach=self.checks.LIMSUP_REACH)
        result.add("limsup", limsup.verdict is Verdict.PASSED, limsup.max_near_origin)
        self.writer.write_json("origin.json", {"origin_limit": origin, "limsup": limsup})

        result.add("front_collapse", front_collapse(evolution.fronts))
        if spec.time_independent:
            result.add("energy_non_increasing", evolution.ledger.non_increasing(self.checks.TOL_BAND))
        ledger = evolution.ledger
        result.add("energy_flux_bounded", ledger.flux_bounded(self.checks.TOL_BAND), ledger.max_flux)

        shifted = self_comparison_check(evolution.snapshots, self.checks.TAU_SHIFT, self.tolerance())
        result.add_verdict("self_comparison", shifted.verdict, shifted.max_violation, shifted.note)

        every: int = self.chain_every(evolution)
        series, chains = chain_monotonicity(evolution.snapshots, "Q", every=every)
        result.add_verdict("q_chain_monotone", series.verdict)
        self.writer.write_json("chains.json", {"series": series, "reports": chains})

        result.scalars.update(
            {
                "detect_time": event.detect_time,
                "max_gradient": event.max_gradient,
                "argmax_radius": event.argmax_radius,
                "threshold": event.threshold,
                "buffered": float(len(event.snapshots)),
                "bubble_count": float(counts[-1].count),
                "origin_multiple": float(origin.nearest_multiple),
                "origin_deviation": origin.deviation,
                "fit_time": fitted.time,
                "steps": float(run.step_count),
            }
        )
        if final is not None:
            result.scalars["scale"] = final.scale
            result.scalars["alpha_est"] = final.alpha_est
        return str(run.status)
