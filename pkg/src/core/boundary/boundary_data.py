"""Evaluation and validation of boundary data h0(r, t).

Specs are pure value objects; every function here is side-effect free apart from logging.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Final

import numpy as np

from core.solver.operator import tau_at_edge, tau_of_values
from models.boundary_models import (
    BoundaryDataSpec,
    BoundaryKind,
    BoundarySpecError,
    BoundaryValidationReport,
    FourArctan,
    ParabolicBoundary,
    TimeModulation,
)
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from numpy.typing import ArrayLike, NDArray

    from models.config_models import Boundary
    from models.grid_models import RadialGrid

__all__: list[str] = [
    "BoundaryDomainError",
    "build_parabolic_boundary",
    "evaluate_boundary",
    "evaluate_profile",
    "spec_from_settings",
    "validate_spec",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

DOMAIN_SLACK: Final[float] = 1e-12
SCALED_RATIO_BOUND: Final[float] = 1e8
TRACE_SAMPLES: Final[int] = 33


class BoundaryDomainError(ValueError):
    """Boundary data evaluated outside [0, 1] x [0, T]."""


def _check_domain(r: NDArray[np.float64], t: float, horizon: float | None) -> None:
    if r.size and (np.min(r) < -DOMAIN_SLACK or np.max(r) > 1.0 + DOMAIN_SLACK):
        msg = f"Radius outside [0, 1]: [{np.min(r)}, {np.max(r)}]"
        raise BoundaryDomainError(msg)
    if not math.isfinite(t) or t < 0.0 or (horizon is not None and t > horizon * (1.0 + DOMAIN_SLACK)):
        msg = f"Time {t} outside [0, {horizon if horizon is not None else 'inf'}]"
        raise BoundaryDomainError(msg)


def evaluate_profile(
    spec: BoundaryDataSpec, r: ArrayLike, t: float, *, horizon: float | None = None
) -> NDArray[np.float64]:
    """h0(r, t) for an array of radii.

    Raises:
        BoundaryDomainError: If any radius lies outside [0, 1] or t outside [0, horizon].
    """
    radii: NDArray[np.float64] = np.asarray(r, dtype=np.float64)
    _check_domain(radii, t, horizon)
    radii = np.clip(radii, 0.0, 1.0)

    base: NDArray[np.float64] = spec.kind.values(radii, spec.k)
    if spec.modulation is None:
        return base
    origin: float = spec.origin_value
    return origin + spec.modulation.factor(t) * (base - origin)


def evaluate_boundary(spec: BoundaryDataSpec, r: float, t: float, *, horizon: float | None = None) -> float:
    """h0(r, t) at a single point."""
    return float(evaluate_profile(spec, np.array([r]), t, horizon=horizon)[0])


def build_parabolic_boundary(
    spec: BoundaryDataSpec, grid: RadialGrid, horizon: float, samples: int = TRACE_SAMPLES
) -> ParabolicBoundary:
    """Sample the data on the bottom and lateral faces of [0, 1] x [0, T]."""
    times: NDArray[np.float64] = np.linspace(0.0, horizon, max(2, samples))
    left: NDArray[np.float64] = np.array([evaluate_boundary(spec, 0.0, t, horizon=horizon) for t in times])
    right: NDArray[np.float64] = np.array([evaluate_boundary(spec, 1.0, t, horizon=horizon) for t in times])
    initial: NDArray[np.float64] = evaluate_profile(spec, grid.nodes, 0.0, horizon=horizon)
    return ParabolicBoundary(
        horizon=horizon, times=times, left_values=left, right_values=right, initial_values=initial
    )


def validate_spec(spec: BoundaryDataSpec, grid: RadialGrid, horizon: float = 1.0) -> BoundaryValidationReport:
    """Report-only structural checks of boundary data.

    Covers the pi-multiple origin value, boundedness of (h0 - m*pi) * r^-k on the three smallest
    positive nodes, the |h0| <= pi global-existence flag and, for time-independent data, the sign
    of tau(psi) that makes the seed a sub-solution.
    """
    notes: list[str] = []
    trace: ParabolicBoundary = build_parabolic_boundary(spec, grid, horizon)

    multiple: int = spec.origin_multiple
    origin_ok: bool = bool(np.all(np.abs(trace.left_values - multiple * np.pi) <= DOMAIN_SLACK))

    radii: NDArray[np.float64] = grid.nodes[1:4]
    ratios: NDArray[np.float64] = np.abs(trace.initial_values[1:4] - multiple * np.pi) / radii**spec.k
    scaled_bounded: bool = bool(np.all(np.isfinite(ratios)) and np.max(ratios) <= SCALED_RATIO_BOUND)
    if not scaled_bounded:
        notes.append("h0 * r^-k grows near the origin; data is not of the form r^k * g")

    sup_abs: float = trace.sup_abs()
    bounded_by_pi: bool = sup_abs <= np.pi + DOMAIN_SLACK

    report = BoundaryValidationReport(
        kind=spec.describe(),
        origin_multiple=multiple,
        origin_in_pi_z=origin_ok,
        scaled_ratios=[float(x) for x in ratios],
        scaled_bounded=scaled_bounded,
        sup_abs=sup_abs,
        bounded_by_pi=bounded_by_pi,
        notes=notes,
    )

    if isinstance(spec.kind, FourArctan):
        report.infinite_time_seed = spec.kind.alpha == 1.0 and spec.time_independent
        if spec.kind.alpha > 1.0:
            notes.append("FourArctan with alpha > 1 leaves [0, pi]")

    if spec.time_independent:
        _check_seed(spec, grid, trace.initial_values, report)

    logger.debug("Validated %s: origin=%s bounded=%s sup=%.6g", report.kind, origin_ok, scaled_bounded, sup_abs)
    return report


def _check_seed(
    spec: BoundaryDataSpec, grid: RadialGrid, psi: NDArray[np.float64], report: BoundaryValidationReport
) -> None:
    tau: NDArray[np.float64] = tau_of_values(grid, psi, spec.k)
    delta: float = 10.0 * grid.max_spacing**2
    edge: float = tau_at_edge(grid, psi, spec.k)
    edge_tol: float = 100.0 * float(grid.spacing[-1])

    report.seed_checked = True
    report.tau_min = float(np.min(tau))
    report.tau_edge = edge
    report.subsolution_seed = bool(report.tau_min >= -delta and abs(edge) <= edge_tol)


def spec_from_settings(settings: Boundary, k: int) -> BoundaryDataSpec:
    """Build a spec from the [BOUNDARY] section.

    Raises:
        BoundarySpecError: If the kind is unknown or its parameters are invalid.
    """
    kind_cls: type[BoundaryKind] | None = BoundaryKind.registered.get(settings.KIND)
    if kind_cls is None:
        msg = f"Unknown boundary kind '{settings.KIND}'. Known kinds: {', '.join(sorted(BoundaryKind.registered))}"
        raise BoundarySpecError(msg)

    modulation: TimeModulation | None = None
    if settings.MODULATION != "none":
        modulation = TimeModulation(
            shape=settings.MODULATION,  # pyright: ignore[reportArgumentType]
            amplitude=settings.MODULATION_AMPLITUDE,
            frequency=settings.MODULATION_FREQUENCY,
        )
    return BoundaryDataSpec(kind=kind_cls.from_settings(settings), k=k, modulation=modulation)
