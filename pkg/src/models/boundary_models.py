"""Boundary data models.

A ``BoundaryDataSpec`` describes h0(r, t) on the parabolic boundary. The radial shape comes from a
``BoundaryKind``; kinds register themselves by name so the configuration loader can look them up.
Every kind is written as m*pi + r^k * g(r) with g bounded, which keeps the origin pinned to a
multiple of pi.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, ClassVar, Final, Literal, Self, override

import numpy as np
from dataclasses_json import DataClassJsonMixin
from scipy.interpolate import CubicSpline

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from models.config_models import Boundary

__all__: list[str] = [
    "BoundaryDataSpec",
    "BoundaryKind",
    "BoundarySpecError",
    "BoundaryValidationReport",
    "Constant",
    "FourArctan",
    "LinearRamp",
    "ParabolicBoundary",
    "ScaledProfile",
    "StationaryArctan",
    "TimeModulation",
]

type ModulationShape = Literal["linear", "sine", "relax"]

MODULATION_SHAPES: Final[tuple[str, ...]] = ("none", "linear", "sine", "relax")
PI_MULTIPLE_TOLERANCE: Final[float] = 1e-12


class BoundarySpecError(ValueError):
    """Boundary data parameters violate the equivariant structure."""


def _arctan_power(alpha: float, r: NDArray[np.float64], k: int) -> NDArray[np.float64]:
    return np.arctan((alpha * r) ** k)


class BoundaryKind(ABC):
    """Radial shape of the boundary data.

    Subclasses are auto-registered by kind name.
    """

    registered: ClassVar[dict[str, type[BoundaryKind]]] = {}

    def __init_subclass__(cls, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        name: str = cls.fetch_kind_name()
        if not name:
            return
        if name in cls.registered:
            msg = f"A boundary kind with name '{name}' is already registered."
            raise ValueError(msg)
        cls.registered[name] = cls

    @staticmethod
    @abstractmethod
    def fetch_kind_name() -> str:
        """Return the unique kind name used in configuration."""
        raise NotImplementedError

    @classmethod
    @abstractmethod
    def from_settings(cls, settings: Boundary) -> Self:
        """Build the kind from the [BOUNDARY] section."""
        raise NotImplementedError

    @property
    @abstractmethod
    def origin_multiple(self) -> int:
        """Integer m with h0(0, t) = m*pi."""
        raise NotImplementedError

    @abstractmethod
    def values(self, r: NDArray[np.float64], k: int) -> NDArray[np.float64]:
        """Time-independent profile h0(r) at the given radii."""
        raise NotImplementedError

    def check_compatible(self, k: int) -> None:  # noqa: B027
        """Raise BoundarySpecError if the kind cannot carry index k."""

    def describe(self) -> str:
        return self.fetch_kind_name()


@dataclass(frozen=True)
class StationaryArctan(BoundaryKind):
    """offset_m*pi + sign*2*arctan((alpha*r)^k); stationary for every alpha."""

    alpha: float = 1.0
    sign: int = 1
    offset_m: int = 0

    def __post_init__(self) -> None:
        if not self.alpha > 0.0:
            msg = f"StationaryArctan requires alpha > 0, got {self.alpha}"
            raise BoundarySpecError(msg)
        if self.sign not in {-1, 1}:
            msg = f"StationaryArctan sign must be +1 or -1, got {self.sign}"
            raise BoundarySpecError(msg)

    @staticmethod
    @override
    def fetch_kind_name() -> str:
        return "stationary_arctan"

    @classmethod
    @override
    def from_settings(cls, settings: Boundary) -> Self:
        return cls(alpha=settings.ALPHA, sign=settings.SIGN, offset_m=settings.OFFSET_M)

    @property
    @override
    def origin_multiple(self) -> int:
        return self.offset_m

    @override
    def values(self, r: NDArray[np.float64], k: int) -> NDArray[np.float64]:
        return self.offset_m * np.pi + self.sign * 2.0 * _arctan_power(self.alpha, r, k)

    @override
    def describe(self) -> str:
        return f"StationaryArctan(alpha={self.alpha:g}, sign={self.sign:+d}, m={self.offset_m})"


@dataclass(frozen=True)
class FourArctan(BoundaryKind):
    """4*arctan((alpha*r)^k); alpha = 1 reaches pi exactly at r = 1."""

    alpha: float = 1.0

    def __post_init__(self) -> None:
        if not self.alpha > 0.0:
            msg = f"FourArctan requires alpha > 0, got {self.alpha}"
            raise BoundarySpecError(msg)

    @staticmethod
    @override
    def fetch_kind_name() -> str:
        return "four_arctan"

    @classmethod
    @override
    def from_settings(cls, settings: Boundary) -> Self:
        return cls(alpha=settings.ALPHA)

    @property
    @override
    def origin_multiple(self) -> int:
        return 0

    @override
    def values(self, r: NDArray[np.float64], k: int) -> NDArray[np.float64]:
        return 4.0 * _arctan_power(self.alpha, r, k)

    @override
    def describe(self) -> str:
        return f"FourArctan(alpha={self.alpha:g})"


@dataclass(frozen=True)
class LinearRamp(BoundaryKind):
    """slope*r, admitted for k = 1 only."""

    slope: float = 3.5

    @staticmethod
    @override
    def fetch_kind_name() -> str:
        return "linear_ramp"

    @classmethod
    @override
    def from_settings(cls, settings: Boundary) -> Self:
        return cls(slope=settings.SLOPE)

    @property
    @override
    def origin_multiple(self) -> int:
        return 0

    @override
    def check_compatible(self, k: int) -> None:
        if k != 1:
            msg = f"LinearRamp vanishes only to first order at the origin; it requires k = 1, got k = {k}"
            raise BoundarySpecError(msg)

    @override
    def values(self, r: NDArray[np.float64], k: int) -> NDArray[np.float64]:
        _ = k
        return self.slope * r

    @override
    def describe(self) -> str:
        return f"LinearRamp(slope={self.slope:g})"


@dataclass(frozen=True)
class ScaledProfile(BoundaryKind):
    """r^k * g(r) with g a cubic spline through (radius, value) samples.

    The spline is clamped to zero slope at r = 0 and natural at r = 1.
    """

    samples: tuple[tuple[float, float], ...] = ((0.0, 0.0), (1.0, 0.0))
    _spline: CubicSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.samples) < 2:  # noqa: PLR2004
            msg = "ScaledProfile needs at least two samples"
            raise BoundarySpecError(msg)
        radii: NDArray[np.float64] = np.array([s[0] for s in self.samples], dtype=np.float64)
        heights: NDArray[np.float64] = np.array([s[1] for s in self.samples], dtype=np.float64)
        if radii[0] != 0.0 or radii[-1] != 1.0 or not np.all(np.diff(radii) > 0.0):
            msg = "ScaledProfile sample radii must increase strictly from 0 to 1"
            raise BoundarySpecError(msg)
        if not np.all(np.isfinite(heights)):
            msg = "ScaledProfile sample values must be finite"
            raise BoundarySpecError(msg)
        object.__setattr__(self, "_spline", CubicSpline(radii, heights, bc_type=((1, 0.0), (2, 0.0))))

    @staticmethod
    @override
    def fetch_kind_name() -> str:
        return "scaled_profile"

    @classmethod
    @override
    def from_settings(cls, settings: Boundary) -> Self:
        try:
            samples = tuple((float(r), float(v)) for r, v in settings.SAMPLES)
        except (TypeError, ValueError) as err:
            msg = f"BOUNDARY.SAMPLES must be a list of [radius, value] pairs: {err}"
            raise BoundarySpecError(msg) from err
        return cls(samples=samples)

    @property
    @override
    def origin_multiple(self) -> int:
        return 0

    @override
    def values(self, r: NDArray[np.float64], k: int) -> NDArray[np.float64]:
        return r**k * self._spline(r)

    @override
    def describe(self) -> str:
        return f"ScaledProfile({len(self.samples)} samples)"


@dataclass(frozen=True)
class Constant(BoundaryKind):
    """Constant value c, required to be a multiple of pi."""

    value: float = 0.0

    def __post_init__(self) -> None:
        ratio: float = self.value / math.pi
        if not math.isfinite(ratio) or abs(ratio - round(ratio)) > PI_MULTIPLE_TOLERANCE:
            msg = f"Constant boundary data must be a multiple of pi, got {self.value}"
            raise BoundarySpecError(msg)

    @staticmethod
    @override
    def fetch_kind_name() -> str:
        return "constant"

    @classmethod
    @override
    def from_settings(cls, settings: Boundary) -> Self:
        return cls(value=settings.VALUE)

    @property
    @override
    def origin_multiple(self) -> int:
        return round(self.value / math.pi)

    @override
    def values(self, r: NDArray[np.float64], k: int) -> NDArray[np.float64]:
        _ = k
        return np.full_like(r, self.origin_multiple * np.pi)

    @override
    def describe(self) -> str:
        return f"Constant({self.origin_multiple}*pi)"


@dataclass(frozen=True)
class TimeModulation:
    """Smooth factor mod(t) applied to the scaled part of the data, mod(0) = 1.

    Attributes:
        shape (ModulationShape): ``linear`` 1 + a*t, ``sine`` 1 + a*sin(2*pi*f*t) or
            ``relax`` 1 + a*(1 - exp(-f*t)).
        amplitude (float): Coefficient a.
        frequency (float): Rate f (unused by ``linear``).
    """

    shape: ModulationShape
    amplitude: float = 0.0
    frequency: float = 1.0

    def __post_init__(self) -> None:
        if self.shape not in MODULATION_SHAPES[1:]:
            msg = f"Unknown time modulation '{self.shape}'"
            raise BoundarySpecError(msg)
        if not (math.isfinite(self.amplitude) and math.isfinite(self.frequency)):
            msg = "Time modulation parameters must be finite"
            raise BoundarySpecError(msg)

    def factor(self, t: float) -> float:
        if self.shape == "linear":
            return 1.0 + self.amplitude * t
        if self.shape == "sine":
            return 1.0 + self.amplitude * math.sin(2.0 * math.pi * self.frequency * t)
        return 1.0 + self.amplitude * (1.0 - math.exp(-self.frequency * t))

    def rate(self, t: float) -> float:
        """Time derivative of ``factor``."""
        if self.shape == "linear":
            return self.amplitude
        if self.shape == "sine":
            omega: float = 2.0 * math.pi * self.frequency
            return self.amplitude * omega * math.cos(omega * t)
        return self.amplitude * self.frequency * math.exp(-self.frequency * t)


@dataclass(frozen=True)
class BoundaryDataSpec:
    """Declarative boundary and initial data h0(r, t).

    h0(r, t) = m*pi + mod(t) * (base(r) - m*pi), where base is the kind's radial shape and m its
    origin multiple.

    Attributes:
        kind (BoundaryKind): Radial shape.
        k (int): Equivariance index (>= 1).
        modulation (TimeModulation | None): Optional smooth time factor; None means time-independent.
    """

    kind: BoundaryKind
    k: int = 1
    modulation: TimeModulation | None = None

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            msg = f"Equivariance index k must be a positive integer, got {self.k!r}"
            raise BoundarySpecError(msg)
        self.kind.check_compatible(self.k)

    @property
    def origin_multiple(self) -> int:
        return self.kind.origin_multiple

    @property
    def origin_value(self) -> float:
        return self.origin_multiple * math.pi

    @property
    def time_independent(self) -> bool:
        return self.modulation is None

    def describe(self) -> str:
        text: str = f"{self.kind.describe()}, k={self.k}"
        if self.modulation is not None:
            text += f", modulation={self.modulation.shape}(a={self.modulation.amplitude:g})"
        return text


@dataclass(frozen=True, eq=False)
class ParabolicBoundary:
    """Traces of the data on the parabolic boundary.

    Attributes:
        horizon (float): Final time T.
        times (NDArray[np.float64]): Sample times in [0, T].
        left_values (NDArray[np.float64]): h0(0, t) at ``times``.
        right_values (NDArray[np.float64]): h0(1, t) at ``times``.
        initial_values (NDArray[np.float64]): h0(r, 0) on the grid.
    """

    horizon: float
    times: NDArray[np.float64]
    left_values: NDArray[np.float64]
    right_values: NDArray[np.float64]
    initial_values: NDArray[np.float64]

    @property
    def corners_consistent(self) -> bool:
        return bool(
            self.left_values[0] == self.initial_values[0] and self.right_values[0] == self.initial_values[-1]
        )

    def sup_abs(self) -> float:
        edges: tuple[NDArray[np.float64], ...] = (self.left_values, self.right_values, self.initial_values)
        return float(max(np.max(np.abs(values)) for values in edges))

    def lies_below(self, other: ParabolicBoundary, tol: float = 0.0) -> bool:
        """Return True if this trace is <= ``other`` + tol everywhere on the shared samples."""
        return bool(
            np.all(self.left_values <= other.left_values + tol)
            and np.all(self.right_values <= other.right_values + tol)
            and np.all(self.initial_values <= other.initial_values + tol)
        )


@dataclass
class BoundaryValidationReport(DataClassJsonMixin):
    """Report-only checks on a boundary spec.

    Attributes:
        kind (str): Human-readable spec description.
        origin_multiple (int): m with h0(0, .) = m*pi.
        origin_in_pi_z (bool): h0(0, t) stays within 1e-12 of m*pi on the sampled times.
        scaled_ratios (list[float]): |h0(r, 0) - m*pi| * r^-k on the three smallest positive nodes.
        scaled_bounded (bool): All ratios finite and below the configured bound.
        sup_abs (float): sup |h0| over the sampled parabolic boundary.
        bounded_by_pi (bool): sup_abs <= pi (global-existence criterion).
        seed_checked (bool): Time-independent data whose tau(psi) was evaluated.
        tau_min (float | None): Minimum of tau(psi) over interior nodes.
        tau_edge (float | None): tau(psi) at r = 1 from one-sided differences.
        subsolution_seed (bool | None): tau(psi) >= -delta inside and ~0 at r = 1.
        infinite_time_seed (bool): FourArctan with alpha = 1, the seed that blows up at infinity.
        notes (list[str]): Free-form remarks.
    """

    kind: str
    origin_multiple: int
    origin_in_pi_z: bool
    scaled_ratios: list[float]
    scaled_bounded: bool
    sup_abs: float
    bounded_by_pi: bool
    seed_checked: bool = False
    tau_min: float | None = None
    tau_edge: float | None = None
    subsolution_seed: bool | None = None
    infinite_time_seed: bool = False
    notes: list[str] = field(default_factory=list)
