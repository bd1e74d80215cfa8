"""Rebuild the sphere-valued map v = (e^{ik theta} sin h, cos h) from a profile."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from core.solver.operator import radial_derivative
from models.flow_models import ReconstructedMap

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from models.flow_models import Profile

__all__: list[str] = ["gradient_density", "reconstruct_map"]


def gradient_density(profile: Profile) -> NDArray[np.float64]:
    """|grad v|^2 = h_r^2 + k^2 sin^2(h) / r^2 at every node.

    The origin node reports the regular limit: 0 for k >= 2 and (1 + k^2) h_r(0)^2 = 2 h_r(0)^2 for
    k = 1, with h_r(0) from the one-sided difference.
    """
    h_r: NDArray[np.float64] = radial_derivative(profile.grid, profile.values)
    r: NDArray[np.float64] = profile.nodes
    k: int = profile.k

    density: NDArray[np.float64] = np.empty_like(profile.values)
    density[1:] = h_r[1:] ** 2 + (k * k) * np.sin(profile.values[1:]) ** 2 / r[1:] ** 2
    density[0] = 2.0 * h_r[0] ** 2 if k == 1 else 0.0
    return density


def reconstruct_map(profile: Profile) -> ReconstructedMap:
    """Unit vectors (sin h, 0, cos h) on the theta = 0 ray plus the gradient density."""
    vectors: NDArray[np.float64] = np.column_stack(
        (np.sin(profile.values), np.zeros_like(profile.values), np.cos(profile.values))
    )
    return ReconstructedMap(vectors=vectors, gradient_density=gradient_density(profile), k=profile.k)
