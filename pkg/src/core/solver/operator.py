"""Discrete radial operator tau(h) = h_rr + h_r/r - k^2 sin(2h) / (2r^2).

Second-order central differences on the non-uniform grid. With h- = r_i - r_{i-1},
h+ = r_{i+1} - r_i and D = h- h+ (h- + h+):

    h_rr ~ (2h+ u_{i-1} - 2(h- + h+) u_i + 2h- u_{i+1}) / D
    h_r  ~ (-h+^2 u_{i-1} + (h+^2 - h-^2) u_i + h-^2 u_{i+1}) / D

Both are folded into one tridiagonal stencil per interior node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Final, Self

import numpy as np

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from models.flow_models import Profile
    from models.grid_models import RadialGrid

__all__: list[str] = [
    "SMALL_ANGLE",
    "RadialStencil",
    "evaluate_tau",
    "nonlinear_term",
    "radial_derivative",
    "reduce_angle",
    "tau_at_edge",
    "tau_of_values",
]

SMALL_ANGLE: Final[float] = 1e-8


def reduce_angle(h: NDArray[np.float64]) -> NDArray[np.float64]:
    """h - m*pi with m the nearest integer; sin(2h) and cos(2h) are pi-periodic."""
    return h - np.round(h / np.pi) * np.pi


def nonlinear_term(h: NDArray[np.float64], inv_r2: NDArray[np.float64], k: int) -> NDArray[np.float64]:
    """k^2 sin(2h) / (2r^2), using (sin(2x)/(2x)) * x/r^2 for the reduced angle |x| < SMALL_ANGLE."""
    x: NDArray[np.float64] = reduce_angle(h)
    small: NDArray[np.bool_] = np.abs(x) < SMALL_ANGLE
    direct: NDArray[np.float64] = 0.5 * np.sin(2.0 * x) * inv_r2
    # np.sinc(y) = sin(pi y) / (pi y), so sinc(2x/pi) = sin(2x) / (2x) with limit 1
    scaled: NDArray[np.float64] = np.sinc(2.0 * x / np.pi) * x * inv_r2
    return (k * k) * np.where(small, scaled, direct)


def radial_derivative(grid: RadialGrid, values: NDArray[np.float64]) -> NDArray[np.float64]:
    """h_r at every node; one-sided second-order differences at both ends."""
    return np.gradient(values, grid.nodes, edge_order=2)


@dataclass(frozen=True, eq=False)
class RadialStencil:
    """Precomputed tridiagonal weights of the linear part of tau on the interior nodes.

    Attributes:
        lower (NDArray[np.float64]): Weight of u_{i-1}.
        diag (NDArray[np.float64]): Weight of u_i.
        upper (NDArray[np.float64]): Weight of u_{i+1}.
        inv_r2 (NDArray[np.float64]): 1 / r_i^2.
        k (int): Equivariance index.
    """

    lower: NDArray[np.float64]
    diag: NDArray[np.float64]
    upper: NDArray[np.float64]
    inv_r2: NDArray[np.float64]
    k: int

    @classmethod
    def from_grid(cls, grid: RadialGrid, k: int) -> Self:
        r: NDArray[np.float64] = grid.nodes
        h_minus: NDArray[np.float64] = r[1:-1] - r[:-2]
        h_plus: NDArray[np.float64] = r[2:] - r[1:-1]
        denom: NDArray[np.float64] = h_minus * h_plus * (h_minus + h_plus)
        r_int: NDArray[np.float64] = r[1:-1]

        lower = (2.0 * h_plus - h_plus**2 / r_int) / denom
        upper = (2.0 * h_minus + h_minus**2 / r_int) / denom
        # rows sum to zero
        diag = -(lower + upper)
        return cls(lower=lower, diag=diag, upper=upper, inv_r2=1.0 / r_int**2, k=k)

    def linear_part(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """h_rr + h_r / r on the interior nodes for the full value vector.

        Evaluated on differences so constants map to exactly zero.
        """
        centre: NDArray[np.float64] = values[1:-1]
        return self.lower * (values[:-2] - centre) + self.upper * (values[2:] - centre)

    def apply(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """tau(h) on the interior nodes for the full value vector."""
        return self.linear_part(values) - nonlinear_term(values[1:-1], self.inv_r2, self.k)

    def implicit_bands(self, values: NDArray[np.float64], dt: float) -> NDArray[np.float64]:
        """Banded storage of I - dt * d tau / du for ``scipy.linalg.solve_banded((1, 1), ...)``."""
        interior: NDArray[np.float64] = values[1:-1]
        size: int = interior.size
        bands: NDArray[np.float64] = np.zeros((3, size), dtype=np.float64)
        bands[0, 1:] = -dt * self.upper[:-1]
        bands[1, :] = 1.0 - dt * (self.diag - (self.k * self.k) * np.cos(2.0 * reduce_angle(interior)) * self.inv_r2)
        bands[2, :-1] = -dt * self.lower[1:]
        return bands


def tau_of_values(grid: RadialGrid, values: NDArray[np.float64], k: int) -> NDArray[np.float64]:
    return RadialStencil.from_grid(grid, k).apply(values)


def evaluate_tau(profile: Profile) -> NDArray[np.float64]:
    """Discrete tau(h) at each interior node of the profile."""
    return tau_of_values(profile.grid, profile.values, profile.k)


def tau_at_edge(grid: RadialGrid, values: NDArray[np.float64], k: int) -> float:
    """tau(h) at r = 1 from one-sided differences (first order in the last cell)."""
    h_r: NDArray[np.float64] = radial_derivative(grid, values)
    h_rr: NDArray[np.float64] = np.gradient(h_r, grid.nodes, edge_order=2)
    h_edge: float = float(values[-1])
    return float(h_rr[-1] + h_r[-1] - (k * k) * 0.5 * np.sin(2.0 * h_edge))
