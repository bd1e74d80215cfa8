"""Ordering checks over snapshot series: comparison, self-comparison, maximum and barrier checks.

Snapshot series are sampled on their own time lattices; a pair of series is compared on the union of
both lattices (restricted to the common time span) with linear interpolation in time. A series with
a single profile is treated as frozen in time.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Final

import numpy as np

from models.report_models import MaximumReport, OrderingReport, Verdict
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from models.flow_models import Profile
    from models.grid_models import RadialGrid
    from models.report_models import BarrierFit

__all__: list[str] = [
    "GridMismatchError",
    "SnapshotSeries",
    "barrier_check",
    "comparison_check",
    "comparison_tolerance",
    "discrete_maximum_check",
    "self_comparison_check",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

TIME_SLACK: Final[float] = 1e-12


class GridMismatchError(ValueError):
    """Compared snapshots do not share a grid."""


def comparison_tolerance(grid: RadialGrid, dt_max: float, factor: float = 10.0) -> float:
    """C * (dr^2 + dt_max) with dr the largest cell."""
    return factor * (grid.max_spacing**2 + dt_max)


class SnapshotSeries:
    """Profiles of one run stacked into a (times x nodes) array."""

    def __init__(self, snapshots: Sequence[Profile]) -> None:
        if not snapshots:
            msg = "Snapshot series needs at least one profile"
            raise ValueError(msg)
        grid: RadialGrid = snapshots[0].grid
        if any(not profile.grid.same_as(grid) for profile in snapshots):
            msg = "Snapshots of one series live on different grids"
            raise GridMismatchError(msg)
        self.grid: RadialGrid = grid
        self.times: NDArray[np.float64] = np.array([profile.time for profile in snapshots], dtype=np.float64)
        if np.any(np.diff(self.times) < 0.0):
            msg = "Snapshot times must be non-decreasing"
            raise ValueError(msg)
        self.values: NDArray[np.float64] = np.vstack([profile.values for profile in snapshots])

    @property
    def frozen(self) -> bool:
        return self.times.size == 1

    @property
    def start(self) -> float:
        return -math.inf if self.frozen else float(self.times[0])

    @property
    def end(self) -> float:
        return math.inf if self.frozen else float(self.times[-1])

    def at(self, t: float) -> NDArray[np.float64]:
        """Values at time t, linear in time between snapshots and clamped at the ends."""
        if self.frozen or t <= self.times[0]:
            return self.values[0]
        if t >= self.times[-1]:
            return self.values[-1]
        upper: int = int(np.searchsorted(self.times, t, side="right"))
        lower: int = upper - 1
        span: float = float(self.times[upper] - self.times[lower])
        if span <= 0.0:
            return self.values[upper]
        weight: float = (t - float(self.times[lower])) / span
        return (1.0 - weight) * self.values[lower] + weight * self.values[upper]


def _as_series(snapshots: Sequence[Profile] | SnapshotSeries) -> SnapshotSeries:
    return snapshots if isinstance(snapshots, SnapshotSeries) else SnapshotSeries(snapshots)


def _verdict(max_violation: float, tol: float) -> Verdict:
    return Verdict.ORDERED if max_violation <= tol else Verdict.VIOLATED


def comparison_check(
    sub: Sequence[Profile] | SnapshotSeries,
    sup: Sequence[Profile] | SnapshotSeries,
    tol: float,
    label: str = "comparison",
) -> OrderingReport:
    """Check sub <= sup + tol on every sampled (r, t).

    Raises:
        GridMismatchError: If the series live on different grids.
    """
    lower_series: SnapshotSeries = _as_series(sub)
    upper_series: SnapshotSeries = _as_series(sup)
    if not lower_series.grid.same_as(upper_series.grid):
        msg = f"Comparison '{label}' mixes grids with N={lower_series.grid.n} and N={upper_series.grid.n}"
        raise GridMismatchError(msg)

    start: float = max(lower_series.start, upper_series.start)
    end: float = min(lower_series.end, upper_series.end)
    lattice: NDArray[np.float64] = np.union1d(lower_series.times, upper_series.times)
    if math.isfinite(start) or math.isfinite(end):
        lattice = lattice[(lattice >= start - TIME_SLACK) & (lattice <= end + TIME_SLACK)]
    if lattice.size == 0:
        return OrderingReport(
            label=label,
            pairs_checked=0,
            max_violation=-math.inf,
            worst_radius=math.nan,
            worst_time=math.nan,
            tolerance=tol,
            verdict=Verdict.INAPPLICABLE,
            note="series share no time span",
        )

    nodes: NDArray[np.float64] = lower_series.grid.nodes
    worst: float = -math.inf
    worst_radius: float = math.nan
    worst_time: float = math.nan
    for t in lattice:
        gap: NDArray[np.float64] = lower_series.at(float(t)) - upper_series.at(float(t))
        index: int = int(np.argmax(gap))
        if gap[index] > worst:
            worst = float(gap[index])
            worst_radius = float(nodes[index])
            worst_time = float(t)

    report = OrderingReport(
        label=label,
        pairs_checked=int(lattice.size * nodes.size),
        max_violation=worst,
        worst_radius=worst_radius,
        worst_time=worst_time,
        tolerance=tol,
        verdict=_verdict(worst, tol),
    )
    if not report.ordered:
        logger.warning(
            "Ordering '%s' violated by %.3e at r=%.6g, t=%.6g", label, worst, worst_radius, worst_time
        )
    return report


def _self_comparison_hypothesis(series: SnapshotSeries, tau: float) -> str:
    t0: float = float(series.times[0])
    early: NDArray[np.bool_] = (series.times > t0) & (series.times <= t0 + tau + TIME_SLACK)
    if np.any(np.abs(series.values[early] - series.values[0]) > np.pi):
        return "|h(r, t) - h(r, t0)| exceeds pi within the shift"
    edge: NDArray[np.float64] = series.values[:, -1]
    for index, t in enumerate(series.times):
        shifted_edge: float = float(series.at(float(t) - tau)[-1]) if t - tau >= t0 else float(edge[0])
        if abs(float(edge[index]) - shifted_edge) > np.pi:
            return "boundary value moves by more than pi within the shift"
    return ""


def self_comparison_check(
    snapshots: Sequence[Profile] | SnapshotSeries, tau: float, tol: float, label: str = "self-comparison"
) -> OrderingReport:
    """Check h(r, t - tau) - pi <= h(r, t) <= h(r, t - tau) + pi for snapshots with t >= t0 + tau.

    The shift hypothesis (|h(., s) - h(., t0)| <= pi for s <= t0 + tau and boundary increments below
    pi) is checked first; failure yields an ``inapplicable`` verdict.
    """
    series: SnapshotSeries = _as_series(snapshots)
    reason: str = "" if tau > 0.0 else "shift must be positive"
    if not reason:
        reason = _self_comparison_hypothesis(series, tau)
    t0: float = float(series.times[0])
    usable: NDArray[np.float64] = series.times[series.times >= t0 + tau - TIME_SLACK]
    if not reason and usable.size == 0:
        reason = "no snapshot later than the shift"
    if reason:
        return OrderingReport(
            label=label,
            pairs_checked=0,
            max_violation=-math.inf,
            worst_radius=math.nan,
            worst_time=math.nan,
            tolerance=tol,
            verdict=Verdict.INAPPLICABLE,
            note=reason,
        )

    nodes: NDArray[np.float64] = series.grid.nodes
    worst: float = -math.inf
    worst_radius: float = math.nan
    worst_time: float = math.nan
    for t in usable:
        current: NDArray[np.float64] = series.at(float(t))
        shifted: NDArray[np.float64] = series.at(max(float(t) - tau, t0))
        gap: NDArray[np.float64] = np.maximum(shifted - np.pi - current, current - shifted - np.pi)
        index: int = int(np.argmax(gap))
        if gap[index] > worst:
            worst = float(gap[index])
            worst_radius = float(nodes[index])
            worst_time = float(t)

    report = OrderingReport(
        label=label,
        pairs_checked=int(usable.size * nodes.size),
        max_violation=worst,
        worst_radius=worst_radius,
        worst_time=worst_time,
        tolerance=tol,
        verdict=_verdict(worst, tol),
    )
    if not report.ordered:
        logger.warning("Self-comparison violated by %.3e at t=%.6g", worst, worst_time)
    return report


def discrete_maximum_check(
    snapshots: Sequence[Profile] | SnapshotSeries, level: float, tol: float, t_from: float = 0.0
) -> MaximumReport:
    """Interior |h| stays within the parabolic boundary maximum for t > t_from.

    The bound at time t is the larger of max|h| over the first snapshot and max|h| over r = 0, 1 up to
    t. An interior peak above bound + tol is a violation, so an interior node may touch the level only
    where the boundary already does. Profiles identically at the level are exempt. Inapplicable when
    the data on the lateral boundary exceeds ``level``.
    """
    series: SnapshotSeries = _as_series(snapshots)
    lateral: NDArray[np.float64] = np.max(np.abs(series.values[:, [0, -1]]), axis=1)
    boundary_max: float = float(np.max(lateral))
    interior_max: float = -math.inf
    offending: float | None = None
    checked: int = 0

    if boundary_max > level + tol:
        verdict: Verdict = Verdict.INAPPLICABLE
    else:
        verdict = Verdict.PASSED
        bound: float = float(np.max(np.abs(series.values[0])))
        for t, values, edge in zip(series.times, series.values, lateral, strict=True):
            bound = max(bound, float(edge))
            if t <= t_from:
                continue
            checked += 1
            if np.all(np.abs(np.abs(values) - level) <= tol):
                continue
            peak: float = float(np.max(np.abs(values[1:-1])))
            interior_max = max(interior_max, peak)
            if peak > bound + tol and offending is None:
                offending = float(t)
                verdict = Verdict.VIOLATED

    if verdict is Verdict.VIOLATED:
        logger.warning("Interior rose above the parabolic boundary maximum at t=%s", offending)
    return MaximumReport(
        level=level,
        t_from=t_from,
        snapshots_checked=checked,
        max_interior=interior_max,
        margin=level - interior_max,
        boundary_max=boundary_max,
        verdict=verdict,
        offending_time=offending,
    )


def barrier_check(
    snapshots: Sequence[Profile] | SnapshotSeries, barrier: BarrierFit, k: int, tol: float
) -> OrderingReport:
    """Re-check theta_{alpha0} >= |h| on [0, r0] while |h(r0, t)| <= theta_{alpha0}(r0) + tol."""
    series: SnapshotSeries = _as_series(snapshots)
    nodes: NDArray[np.float64] = series.grid.nodes
    inside: NDArray[np.bool_] = nodes <= barrier.r0 + TIME_SLACK
    theta: NDArray[np.float64] = 2.0 * np.arctan((barrier.alpha0 * nodes) ** k)
    edge: int = int(np.flatnonzero(inside)[-1])

    worst: float = -math.inf
    worst_radius: float = math.nan
    worst_time: float = math.nan
    checked: int = 0
    for t, values in zip(series.times, series.values, strict=True):
        if abs(values[edge]) > theta[edge] + tol:
            break
        checked += 1
        gap: NDArray[np.float64] = np.abs(values[inside]) - theta[inside]
        index: int = int(np.argmax(gap))
        if gap[index] > worst:
            worst = float(gap[index])
            worst_radius = float(nodes[index])
            worst_time = float(t)

    label: str = f"barrier(alpha0={barrier.alpha0:g}, r0={barrier.r0:.6g})"
    if checked == 0:
        return OrderingReport(
            label=label,
            pairs_checked=0,
            max_violation=-math.inf,
            worst_radius=math.nan,
            worst_time=math.nan,
            tolerance=tol,
            verdict=Verdict.INAPPLICABLE,
            note="barrier edge already reached",
        )
    return OrderingReport(
        label=label,
        pairs_checked=checked * int(np.count_nonzero(inside)),
        max_violation=worst,
        worst_radius=worst_radius,
        worst_time=worst_time,
        tolerance=tol,
        verdict=_verdict(worst, tol),
    )
