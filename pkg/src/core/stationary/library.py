"""Closed-form stationary solutions and barriers.

theta_alpha(r) = 2 arctan((alpha r)^k) and chi_alpha(r) = pi - theta_alpha(r) solve the stationary
equation exactly; constants m*pi are trivial solutions. psi(r) = 4 arctan((alpha r)^k) is the
non-stationary seed of the global run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING, Final

import numpy as np

from models.boundary_models import BoundaryDataSpec, Constant, FourArctan, StationaryArctan
from models.report_models import BarrierFit, NoBarrier
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from numpy.typing import ArrayLike, NDArray

    from models.boundary_models import BoundaryKind
    from models.flow_models import Profile

__all__: list[str] = [
    "BARRIER_LADDER",
    "StationaryFamily",
    "StationaryProfile",
    "barrier_fit",
    "eval_stationary",
    "identity_residual",
    "sample",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

BARRIER_LADDER: Final[tuple[float, ...]] = tuple(2.0**i for i in range(31))
BARRIER_TOLERANCE: Final[float] = 1e-12


class StationaryFamily(StrEnum):
    THETA_ALPHA = "ThetaAlpha"
    CHI_ALPHA = "ChiAlpha"
    CONSTANT_M_PI = "ConstantMPi"
    FOUR_ARCTAN = "FourArctan"


@dataclass(frozen=True)
class StationaryProfile:
    """A member of one of the closed-form families.

    Attributes:
        family (StationaryFamily): Which family.
        alpha (float): Scale (> 0); ignored for constants.
        m (int): Offset in multiples of pi; the constant value for ConstantMPi.
        k (int): Equivariance index.
    """

    family: StationaryFamily
    alpha: float = 1.0
    m: int = 0
    k: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            msg = f"Equivariance index must be >= 1, got {self.k}"
            raise ValueError(msg)
        if not self.alpha > 0.0:
            msg = f"Scale alpha must be positive, got {self.alpha}"
            raise ValueError(msg)

    @property
    def is_stationary(self) -> bool:
        return self.family is not StationaryFamily.FOUR_ARCTAN

    @property
    def label(self) -> str:
        if self.family is StationaryFamily.CONSTANT_M_PI:
            return f"{self.m}*pi"
        suffix: str = f"+{self.m}*pi" if self.m else ""
        return f"{self.family}({self.alpha:g}, k={self.k}){suffix}"

    def boundary_kind(self) -> BoundaryKind:
        """The boundary kind that reproduces this profile as frozen data."""
        match self.family:
            case StationaryFamily.THETA_ALPHA:
                return StationaryArctan(alpha=self.alpha, sign=1, offset_m=self.m)
            case StationaryFamily.CHI_ALPHA:
                return StationaryArctan(alpha=self.alpha, sign=-1, offset_m=self.m + 1)
            case StationaryFamily.CONSTANT_M_PI:
                return Constant(value=self.m * math.pi)
            case StationaryFamily.FOUR_ARCTAN:
                if self.m:
                    msg = "FourArctan seeds carry no pi offset"
                    raise ValueError(msg)
                return FourArctan(alpha=self.alpha)

    def as_spec(self) -> BoundaryDataSpec:
        return BoundaryDataSpec(kind=self.boundary_kind(), k=self.k)


def sample(sp: StationaryProfile, r: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Closed-form values and first derivatives at radii r."""
    radii: NDArray[np.float64] = np.asarray(r, dtype=np.float64)
    if sp.family is StationaryFamily.CONSTANT_M_PI:
        return np.full_like(radii, sp.m * math.pi), np.zeros_like(radii)

    k: int = sp.k
    scaled: NDArray[np.float64] = (sp.alpha * radii) ** k
    arc: NDArray[np.float64] = 2.0 * np.arctan(scaled)
    # d/dr 2 arctan((alpha r)^k) = 2k alpha^k r^(k-1) / (1 + (alpha r)^(2k))
    slope: NDArray[np.float64] = 2.0 * k * sp.alpha**k * radii ** (k - 1) / (1.0 + scaled**2)
    offset: float = sp.m * math.pi

    match sp.family:
        case StationaryFamily.THETA_ALPHA:
            return offset + arc, slope
        case StationaryFamily.CHI_ALPHA:
            return offset + math.pi - arc, -slope
        case _:
            return offset + 2.0 * arc, 2.0 * slope


def eval_stationary(sp: StationaryProfile, r: float) -> tuple[float, float]:
    """Value and first derivative at a single radius in [0, 1]."""
    if not 0.0 <= r <= 1.0:
        msg = f"Radius {r} outside [0, 1]"
        raise ValueError(msg)
    value, slope = sample(sp, np.array([r]))
    return float(value[0]), float(slope[0])


def identity_residual(sp: StationaryProfile, r: ArrayLike) -> float:
    """max |r^2 h_r^2 - k^2 sin^2 h| with closed-form derivatives; zero for theta and chi."""
    radii: NDArray[np.float64] = np.asarray(r, dtype=np.float64)
    value, slope = sample(sp, radii)
    return float(np.max(np.abs(radii**2 * slope**2 - (sp.k**2) * np.sin(value) ** 2)))


def _dominated_prefix(abs_values: NDArray[np.float64], radii: NDArray[np.float64], alpha: float, k: int) -> int:
    barrier: NDArray[np.float64] = 2.0 * np.arctan((alpha * radii) ** k)
    fails: NDArray[np.bool_] = barrier < abs_values - BARRIER_TOLERANCE
    return int(np.argmax(fails)) if fails.any() else radii.size


def barrier_fit(profile: Profile) -> BarrierFit | NoBarrier:
    """Smallest ladder alpha whose theta_alpha dominates |h| on the longest node prefix [0, r0].

    Profiles with a nonzero origin value cannot be dominated and return ``NoBarrier("origin")``.
    """
    if abs(profile.origin_value) > BARRIER_TOLERANCE:
        logger.warning("Barrier fit needs h(0) = 0, got %.6g", profile.origin_value)
        return NoBarrier(reason="origin")

    abs_values: NDArray[np.float64] = np.abs(profile.values)
    radii: NDArray[np.float64] = profile.nodes
    best: int = _dominated_prefix(abs_values, radii, BARRIER_LADDER[-1], profile.k)
    if best <= 1:
        return NoBarrier(reason="first-node")

    for alpha in BARRIER_LADDER:
        prefix: int = _dominated_prefix(abs_values, radii, alpha, profile.k)
        if prefix == best:
            return BarrierFit(alpha0=alpha, r0=float(radii[prefix - 1]))
    return BarrierFit(alpha0=BARRIER_LADDER[-1], r0=float(radii[best - 1]))  # pragma: no cover
