"""Bubble extraction at a blow-up: parabolic rescaling, arctan fits, transit counting, limits at the origin."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Final

import numpy as np

from core.diagnostics.gradient import sup_gradient
from models.report_models import BubbleCount, BubbleFit, LimsupReport, OriginLimitReport, Verdict
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from core.blowup.detector import BlowUpEvent
    from models.flow_models import Profile

__all__: list[str] = [
    "BlowUpAnalysisError",
    "NoTransitError",
    "ScaleSeparationError",
    "bubble_count",
    "extract_bubble",
    "fit_bubble",
    "last_smooth_index",
    "limsup_check",
    "origin_limit_check",
    "rescaled_profile",
    "smooth_core",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

MIN_SCALE_GRADIENT: Final[float] = 100.0
FIT_BAND: Final[tuple[float, float]] = (0.1 * math.pi, 0.9 * math.pi)
BUBBLE_BAND: Final[tuple[float, float]] = (0.25 * math.pi, 0.75 * math.pi)
ORIGIN_WINDOW: Final[tuple[float, float]] = (10.0, 100.0)
SMOOTH_SLACK: Final[float] = 1e-6


class BlowUpAnalysisError(ValueError):
    """Base class for bubble extraction failures."""


class NoTransitError(BlowUpAnalysisError):
    """The rescaled profile holds no transit to fit; the resolution is insufficient."""


class ScaleSeparationError(BlowUpAnalysisError):
    """The gradient is too small to separate the bubble scale from the boundary data."""


def smooth_core(profile: Profile, slack: float = SMOOTH_SLACK) -> bool:
    """h leaves its origin multiple of pi monotonically until it is 0.9*pi away (or up to r = 1).

    Profiles where Newton settled on a spurious branch oscillate in the first few cells and fail this.
    """
    m_offset: int = round(profile.origin_value / math.pi)
    shifted: NDArray[np.float64] = profile.values - m_offset * math.pi
    far: NDArray[np.intp] = np.flatnonzero(np.abs(shifted) >= FIT_BAND[1])
    stop: int = int(far[0]) + 1 if far.size else shifted.size
    if stop < 2:  # noqa: PLR2004
        return True
    direction: float = 1.0 if shifted[stop - 1] >= 0.0 else -1.0
    return bool(np.all(direction * np.diff(shifted[:stop]) >= -slack))


def rescaled_profile(profile: Profile, scale: float) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(rho, H) with rho = r / scale and H(rho) = h(scale * rho)."""
    return profile.nodes / scale, profile.values


def fit_bubble(profile: Profile, min_gradient: float = MIN_SCALE_GRADIENT) -> BubbleFit:
    """Fit the rescaled profile to m*pi + sign*2*arctan((alpha*rho)^k) on its innermost transit.

    The scale is R = 2k / max|h_r|. The offset m is the multiple of pi nearest h(0); the sign is the
    direction in which h first moves half a turn away from m*pi.

    Raises:
        ScaleSeparationError: If max|h_r| < ``min_gradient``.
        NoTransitError: If no transit across (0.1*pi, 0.9*pi) is found.
    """
    gradient, _ = sup_gradient(profile)
    if gradient < min_gradient:
        msg = f"max|h_r| = {gradient:.6g} is below the scale-separation floor {min_gradient:g}"
        raise ScaleSeparationError(msg)

    k: int = profile.k
    scale: float = 2.0 * k / gradient
    rho, values = rescaled_profile(profile, scale)
    m_offset: int = round(float(values[0]) / math.pi)
    shifted: NDArray[np.float64] = values - m_offset * math.pi

    half_turn: NDArray[np.intp] = np.flatnonzero(np.abs(shifted) >= 0.5 * math.pi)
    if half_turn.size == 0:
        msg = f"Profile at t={profile.time:.9g} never moves half a turn away from {m_offset}*pi"
        raise NoTransitError(msg)
    sign: int = 1 if shifted[half_turn[0]] > 0.0 else -1

    transit: NDArray[np.float64] = sign * shifted
    inside: NDArray[np.bool_] = (transit > FIT_BAND[0]) & (transit < FIT_BAND[1]) & (rho > 0.0)
    start_candidates: NDArray[np.intp] = np.flatnonzero(inside)
    if start_candidates.size == 0:
        msg = f"No node of the profile at t={profile.time:.9g} lies inside the fit band"
        raise NoTransitError(msg)
    start: int = int(start_candidates[0])
    outside: NDArray[np.intp] = np.flatnonzero(~inside[start:])
    stop: int = start + int(outside[0]) if outside.size else inside.size
    if stop - start < 2:  # noqa: PLR2004
        msg = f"Fit window at t={profile.time:.9g} holds a single node"
        raise NoTransitError(msg)

    window_rho: NDArray[np.float64] = rho[start:stop]
    log_rho: NDArray[np.float64] = np.log(window_rho)
    log_tan: NDArray[np.float64] = np.log(np.tan(transit[start:stop] / 2.0))
    alpha_est: float = float(np.exp(np.mean(log_tan / k - log_rho)))
    slope_est: float = float(np.polyfit(log_rho, log_tan, 1)[0])
    model: NDArray[np.float64] = m_offset * math.pi + sign * 2.0 * np.arctan((alpha_est * window_rho) ** k)
    sup_error: float = float(np.max(np.abs(values[start:stop] - model)))

    return BubbleFit(
        time=profile.time,
        scale=scale,
        alpha_est=alpha_est,
        sign=sign,
        m_offset=m_offset,
        sup_error=sup_error,
        relative_error=sup_error / math.pi,
        window_lo=float(window_rho[0]),
        window_hi=float(window_rho[-1]),
        slope_est=slope_est,
        max_gradient=gradient,
    )


def extract_bubble(event: BlowUpEvent, index: int = -1, min_gradient: float = MIN_SCALE_GRADIENT) -> BubbleFit:
    """Fit the buffered snapshot ``index`` of a blow-up event."""
    count: int = len(event.snapshots)
    if not -count <= index < count:
        msg = f"Snapshot index {index} outside a buffer of {count} profiles"
        raise BlowUpAnalysisError(msg)
    return fit_bubble(event.snapshots[index], min_gradient)


def last_smooth_index(event: BlowUpEvent) -> int:
    """Index of the latest buffered snapshot with a monotone core.

    Raises:
        BlowUpAnalysisError: If no buffered snapshot qualifies.
    """
    for index in range(len(event.snapshots) - 1, -1, -1):
        if smooth_core(event.snapshots[index]):
            return index
    msg = f"None of the {len(event.snapshots)} buffered snapshots has a monotone core"
    raise BlowUpAnalysisError(msg)


def bubble_count(profile: Profile, r_limit: float = 1.0) -> BubbleCount:
    """Count upward transits across [j*pi + pi/4, j*pi + 3*pi/4] on [0, r_limit], every j.

    A transit starts at the last node at or below the band and ends at the first node at or above it,
    with h non-decreasing in between. A dip on the way disarms it; a new transit across the same band
    needs a return below it first.
    """
    mask: NDArray[np.bool_] = profile.nodes <= r_limit
    radii: NDArray[np.float64] = profile.nodes[mask]
    values: NDArray[np.float64] = profile.values[mask]
    intervals: list[list[float]] = []
    if values.size == 0:
        return BubbleCount(time=profile.time, r_limit=r_limit, count=0)

    low_j: int = math.floor(float(np.min(values)) / math.pi) - 1
    high_j: int = math.ceil(float(np.max(values)) / math.pi)
    for j in range(low_j, high_j + 1):
        relative: NDArray[np.float64] = values - j * math.pi
        armed_at: float | None = None
        previous: float = -math.inf
        for radius, value in zip(radii, relative, strict=True):
            if value <= BUBBLE_BAND[0]:
                armed_at = float(radius)
            elif armed_at is not None:
                if value < previous:
                    armed_at = None
                elif value >= BUBBLE_BAND[1]:
                    intervals.append([armed_at, float(radius)])
                    armed_at = None
            previous = float(value)
    intervals.sort()
    return BubbleCount(time=profile.time, r_limit=r_limit, count=len(intervals), intervals=intervals)


def origin_limit_check(
    profile: Profile, scale: float, expected: int | None = None, tolerance: float = 0.1
) -> OriginLimitReport:
    """Nearest multiple of pi and max deviation of h on [10*R, 100*R] intersected with [0, 1].

    Passes when the deviation is within ``tolerance * pi`` and, if given, the multiple equals ``expected``.
    """
    lo: float = ORIGIN_WINDOW[0] * scale
    hi: float = min(1.0, ORIGIN_WINDOW[1] * scale)
    window: NDArray[np.bool_] = (profile.nodes >= lo) & (profile.nodes <= hi)
    if lo > 1.0 or not np.any(window):
        logger.info("Origin window [%.3e, %.3e] holds no node", lo, hi)
        return OriginLimitReport(
            time=profile.time,
            scale=scale,
            window_lo=lo,
            window_hi=hi,
            nearest_multiple=round(profile.origin_value / math.pi),
            deviation=math.nan,
            verdict=Verdict.INCONCLUSIVE,
        )

    values: NDArray[np.float64] = profile.values[window]
    nearest: int = round(float(np.median(values)) / math.pi)
    deviation: float = float(np.max(np.abs(values - nearest * math.pi)))
    passed: bool = deviation <= tolerance * math.pi and (expected is None or nearest == expected)
    return OriginLimitReport(
        time=profile.time,
        scale=scale,
        window_lo=lo,
        window_hi=hi,
        nearest_multiple=nearest,
        deviation=deviation,
        verdict=Verdict.PASSED if passed else Verdict.VIOLATED,
    )


def limsup_check(snapshots: Sequence[Profile], reach: float = 0.9, cap_margin: float = 0.1) -> LimsupReport:
    """Near the origin sup|h - h(0)| must come within ``reach`` of pi; globally sup|h| stays under the cap.

    Near the origin means r at or below the smallest grid decile. The cap is
    max(boundary sup, pi) * (1 + cap_margin).
    """
    if not snapshots:
        msg = "Limsup check needs at least one snapshot"
        raise BlowUpAnalysisError(msg)
    near: float = 0.0
    overall: float = 0.0
    boundary: float = 0.0
    for profile in snapshots:
        inner: NDArray[np.bool_] = profile.nodes <= profile.grid.decile_radius()
        near = max(near, float(np.max(np.abs(profile.values[inner] - profile.origin_value))))
        overall = max(overall, float(np.max(np.abs(profile.values))))
        boundary = max(boundary, abs(profile.boundary_value), abs(profile.origin_value))
    cap: float = max(boundary, math.pi) * (1.0 + cap_margin)
    return LimsupReport(
        buffered=len(snapshots),
        max_near_origin=near,
        reaches_pi=near >= reach * math.pi,
        max_overall=overall,
        upper_cap=cap,
        within_cap=overall <= cap,
    )
