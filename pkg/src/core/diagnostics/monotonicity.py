"""Sign checks of h_t and h_r along a run."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Sequence

    from models.flow_models import Profile

__all__: list[str] = ["min_radial_increment", "min_time_derivative", "growth_at_radius"]


def min_time_derivative(snapshots: Sequence[Profile]) -> float:
    """Smallest difference quotient (h(t2) - h(t1)) / (t2 - t1) over consecutive snapshots and all nodes."""
    lowest: float = math.inf
    for before, after in zip(snapshots, snapshots[1:], strict=False):
        dt: float = after.time - before.time
        if dt <= 0.0:
            continue
        lowest = min(lowest, float(np.min((after.values - before.values) / dt)))
    return lowest


def min_radial_increment(snapshots: Sequence[Profile]) -> float:
    """Smallest h(r_{i+1}) - h(r_i) over all snapshots; positive means h_r > 0 on the grid."""
    return min(float(np.min(np.diff(profile.values))) for profile in snapshots)


def growth_at_radius(snapshots: Sequence[Profile], radius: float) -> float:
    """h(radius, t_end) - h(radius, t_start)."""
    return snapshots[-1].at(radius) - snapshots[0].at(radius)
