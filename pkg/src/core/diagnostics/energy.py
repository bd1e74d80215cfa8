"""Equivariant energy, its rate identity and the Sacks-Uhlenbeck identity.

Time derivatives always come from differencing accepted snapshots, never from tau(h).
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import cumulative_trapezoid

from core.solver.operator import radial_derivative
from models.report_models import EnergyLedger, EnergySample
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from models.flow_models import Profile

__all__: list[str] = [
    "DegenerateIntervalError",
    "EnergyDiagnosticsError",
    "build_ledger",
    "energy",
    "energy_density",
    "energy_rate_check",
    "sacks_uhlenbeck_residual",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)


class EnergyDiagnosticsError(ValueError):
    """Base class for energy diagnostic usage errors."""


class DegenerateIntervalError(EnergyDiagnosticsError):
    """Two snapshots do not span a positive time interval."""


def energy_density(profile: Profile) -> NDArray[np.float64]:
    """pi * (h_r^2 + k^2 sin^2(h) / r^2) * r, with the limit 0 at r = 0."""
    r: NDArray[np.float64] = profile.nodes
    h_r: NDArray[np.float64] = radial_derivative(profile.grid, profile.values)
    density: NDArray[np.float64] = np.zeros_like(r)
    density[1:] = np.pi * (h_r[1:] ** 2 * r[1:] + (profile.k**2) * np.sin(profile.values[1:]) ** 2 / r[1:])
    return density


def energy(profile: Profile) -> float:
    """Trapezoidal energy E(h) = pi int_0^1 (h_r^2 + k^2 sin^2(h) / r^2) r dr."""
    return float(np.trapezoid(energy_density(profile), profile.nodes))


def _check_pair(before: Profile, after: Profile) -> float:
    if not before.grid.same_as(after.grid):
        msg = "Energy rate needs snapshots on the same grid"
        raise EnergyDiagnosticsError(msg)
    interval: float = after.time - before.time
    if not interval > 0.0:
        msg = f"Snapshots at t={before.time} and t={after.time} span no positive interval"
        raise DegenerateIntervalError(msg)
    return interval


def energy_rate_check(before: Profile, after: Profile) -> EnergySample:
    """Compare (E(t2) - E(t1)) / dt with 2*pi*h_r(1)*d/dt h0(1) - 2*pi*int h_t^2 r dr.

    h_t is the snapshot difference quotient; h_r(1) is averaged over both snapshots.

    Raises:
        DegenerateIntervalError: If t2 <= t1.
        EnergyDiagnosticsError: If the snapshots live on different grids.
    """
    interval: float = _check_pair(before, after)
    r: NDArray[np.float64] = before.nodes

    h_t: NDArray[np.float64] = (after.values - before.values) / interval
    edge_slope: float = 0.5 * float(
        radial_derivative(before.grid, before.values)[-1] + radial_derivative(after.grid, after.values)[-1]
    )
    boundary_rate: float = float(h_t[-1])

    e_before: float = energy(before)
    e_after: float = energy(after)
    rate: float = (e_after - e_before) / interval
    flux: float = 2.0 * np.pi * edge_slope * boundary_rate
    dissipation: float = 2.0 * np.pi * float(np.trapezoid(h_t**2 * r, r))

    return EnergySample(
        time=after.time,
        interval=interval,
        energy=e_after,
        flux=flux,
        dissipation=dissipation,
        rate=rate,
        residual=abs(rate - (flux - dissipation)),
    )


def build_ledger(snapshots: Sequence[Profile]) -> EnergyLedger:
    """Energy identity between consecutive snapshots.

    Raises:
        EnergyDiagnosticsError: If no snapshot is given.
    """
    if not snapshots:
        msg = "Energy ledger needs at least one snapshot"
        raise EnergyDiagnosticsError(msg)
    ledger: EnergyLedger = EnergyLedger(initial_time=snapshots[0].time, initial_energy=energy(snapshots[0]))
    for before, after in zip(snapshots, snapshots[1:], strict=False):
        ledger.samples.append(energy_rate_check(before, after))
    logger.debug(
        "Energy ledger: %d samples, E0=%.6g, max residual %.3e",
        len(ledger.samples),
        ledger.initial_energy,
        ledger.max_residual,
    )
    return ledger


def sacks_uhlenbeck_residual(
    profile: Profile, h_t: NDArray[np.float64], h_r: NDArray[np.float64] | None = None
) -> NDArray[np.float64]:
    """2 int_0^r s^2 h_r h_t ds - (r^2 h_r^2 - k^2 sin^2 h) at every node.

    ``h_r`` defaults to the grid derivative; pass closed-form values to test the identity itself.
    """
    r: NDArray[np.float64] = profile.nodes
    slope: NDArray[np.float64] = radial_derivative(profile.grid, profile.values) if h_r is None else h_r
    left: NDArray[np.float64] = 2.0 * cumulative_trapezoid(r**2 * slope * h_t, r, initial=0.0)
    right: NDArray[np.float64] = r**2 * slope**2 - (profile.k**2) * np.sin(profile.values) ** 2
    return left - right
