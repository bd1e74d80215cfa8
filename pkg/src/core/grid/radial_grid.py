"""Graded radial meshes on [0, 1].

Nodes follow the power law r_i = (i/N)^gamma so that resolution clusters at the origin, where
profiles vanish like r^k and gradients concentrate during blow-up.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Final

import numpy as np

from models.grid_models import RadialGrid
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from numpy.typing import NDArray

__all__: list[str] = [
    "MIN_RESOLUTION",
    "GridConfigurationError",
    "build_graded_grid",
    "default_gamma",
    "graded_nodes",
    "refine",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

MIN_RESOLUTION: Final[int] = 16


class GridConfigurationError(ValueError):
    """Grid parameters are outside the usable range."""


def default_gamma(k: int) -> float:
    """Grading exponent used when the configuration leaves it unset: max(2, k)."""
    if k < 1:
        msg = f"Equivariance index must be >= 1, got {k}"
        raise GridConfigurationError(msg)
    return float(max(2, k))


def graded_nodes(n: int, gamma: float) -> NDArray[np.float64]:
    """Evaluate the grading law for any n >= 1 without the minimum-resolution check.

    Args:
        n (int): Number of cells.
        gamma (float): Grading exponent (>= 1).

    Returns:
        NDArray[np.float64]: n + 1 radii with exact endpoints 0 and 1.

    Raises:
        GridConfigurationError: If n < 1, gamma < 1 or the nodes are not strictly increasing
            (underflow at extreme gamma).
    """
    if n < 1:
        msg = f"Grid needs at least one cell, got N={n}"
        raise GridConfigurationError(msg)
    if not math.isfinite(gamma) or gamma < 1.0:
        msg = f"Grading exponent must be a finite value >= 1, got gamma={gamma}"
        raise GridConfigurationError(msg)

    nodes: NDArray[np.float64] = (np.arange(n + 1, dtype=np.float64) / n) ** gamma
    nodes[0] = 0.0
    nodes[-1] = 1.0
    if not np.all(np.diff(nodes) > 0.0):
        msg = f"Grading N={n}, gamma={gamma} underflows near the origin"
        raise GridConfigurationError(msg)
    return nodes


def build_graded_grid(n: int, gamma: float) -> RadialGrid:
    """Build a validated graded grid.

    Raises:
        GridConfigurationError: If n < 16 or gamma < 1.
    """
    if n < MIN_RESOLUTION:
        msg = f"Grid resolution N={n} is below the minimum of {MIN_RESOLUTION}"
        raise GridConfigurationError(msg)

    nodes: NDArray[np.float64] = graded_nodes(n, gamma)
    nodes.setflags(write=False)
    logger.debug("Built graded grid N=%d gamma=%.3g min spacing %.3e", n, gamma, nodes[1])
    return RadialGrid(nodes=nodes, gamma=float(gamma), n=n)


def refine(grid: RadialGrid) -> RadialGrid:
    """Return the grid with doubled N and the same gamma."""
    return build_graded_grid(2 * grid.n, grid.gamma)
