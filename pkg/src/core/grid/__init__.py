"""Graded radial meshes."""

from __future__ import annotations

from core.grid.radial_grid import (
    MIN_RESOLUTION,
    GridConfigurationError,
    build_graded_grid,
    default_gamma,
    graded_nodes,
    refine,
)

__all__: list[str] = [
    "MIN_RESOLUTION",
    "GridConfigurationError",
    "build_graded_grid",
    "default_gamma",
    "graded_nodes",
    "refine",
]
