"""Gradient growth along a run."""

from __future__ import annotations

from typing import TYPE_CHECKING, Final

import numpy as np

from core.solver.operator import radial_derivative
from models.report_models import GradientReport

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from models.flow_models import FlowRun, Profile

__all__: list[str] = ["DEFAULT_LAMBDAS", "GradientTracker", "gradient_scaling", "sup_gradient"]

DEFAULT_LAMBDAS: Final[tuple[float, ...]] = (0.1, 0.2, 0.4)


def sup_gradient(profile: Profile) -> tuple[float, float]:
    """Return (max |h_r|, radius of the maximum)."""
    h_r: NDArray[np.float64] = np.abs(radial_derivative(profile.grid, profile.values))
    index: int = int(np.argmax(h_r))
    return float(h_r[index]), float(profile.nodes[index])


def gradient_scaling(
    snapshots: Sequence[Profile], lambdas: Sequence[float] = DEFAULT_LAMBDAS
) -> dict[str, float]:
    """lambda * sup over r in [lambda, 1] and t in [T/2, T] of |h_r|, keyed by ``f"{lambda:g}"``."""
    if not snapshots:
        return {}
    t_end: float = snapshots[-1].time
    t_start: float = snapshots[0].time
    half: float = t_start + 0.5 * (t_end - t_start)
    late: list[Profile] = [profile for profile in snapshots if profile.time >= half]

    scaling: dict[str, float] = {}
    for lam in lambdas:
        peak: float = 0.0
        for profile in late:
            mask: NDArray[np.bool_] = profile.nodes >= lam
            h_r: NDArray[np.float64] = radial_derivative(profile.grid, profile.values)
            peak = max(peak, float(np.max(np.abs(h_r[mask]))))
        scaling[f"{lam:g}"] = lam * peak
    return scaling


class GradientTracker:
    """Observer recording ||h_r||_inf after every accepted step; never halts."""

    def __init__(self, run: FlowRun | None = None) -> None:
        self.report: GradientReport = GradientReport()
        if run is not None:
            self.record(run.profile)

    def record(self, profile: Profile) -> None:
        value, _ = sup_gradient(profile)
        previous: float = self.report.running_max[-1] if self.report.running_max else 0.0
        self.report.times.append(profile.time)
        self.report.sup_gradient.append(value)
        self.report.running_max.append(max(previous, value))

    def __call__(self, run: FlowRun) -> bool:
        self.record(run.profile)
        return False

    def finish(self, snapshots: Sequence[Profile], lambdas: Sequence[float] = DEFAULT_LAMBDAS) -> GradientReport:
        self.report.scaling = gradient_scaling(snapshots, lambdas)
        return self.report
