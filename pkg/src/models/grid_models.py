"""Radial grid model.

Holds the graded node set on [0, 1] that every profile, operator and diagnostic is sampled on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from numpy.typing import NDArray

__all__: list[str] = ["RadialGrid"]


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Graded mesh r_i = (i/N)^gamma on [0, 1].

    Instances are immutable; the node array is flagged read-only at construction by
    ``core.grid.radial_grid.build_graded_grid``.

    Attributes:
        nodes (NDArray[np.float64]): N + 1 strictly increasing radii, nodes[0] = 0 and nodes[N] = 1.
        gamma (float): Grading exponent (>= 1).
        n (int): Interior resolution count N.
    """

    nodes: NDArray[np.float64]
    gamma: float
    n: int

    @property
    def size(self) -> int:
        return self.n + 1

    @property
    def spacing(self) -> NDArray[np.float64]:
        """Per-cell widths r_{i+1} - r_i (length N)."""
        return np.diff(self.nodes)

    @property
    def min_spacing(self) -> float:
        return float(self.nodes[1] - self.nodes[0])

    @property
    def max_spacing(self) -> float:
        return float(np.max(self.spacing))

    @property
    def interior(self) -> NDArray[np.float64]:
        return self.nodes[1:-1]

    def decile_radius(self) -> float:
        """Radius of the node that closes the smallest decile of the grid."""
        return float(self.nodes[max(1, self.n // 10)])

    def same_as(self, other: RadialGrid) -> bool:
        """Return True if both grids carry identical nodes."""
        if self is other:
            return True
        return self.n == other.n and self.gamma == other.gamma and bool(np.array_equal(self.nodes, other.nodes))
