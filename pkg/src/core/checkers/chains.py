"""Intersection chains of a profile against two references.

Nodes are classified against the references with a dead band: ``below`` (h < h1 - eps), ``between``
(h1 + eps < h < h2 - eps) and ``above`` (h > h2 + eps). A P-chain follows the cyclic pattern
below, between, above, between and has length 1 mod 4; a Q-chain alternates below and above and has
odd length. Only nodes with r > 0 are scanned.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Final

import numpy as np

from core.diagnostics.energy import energy
from core.stationary.library import StationaryFamily, StationaryProfile, sample
from models.report_models import ChainInapplicable, ChainReport, ChainSeries, Verdict
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Callable, Sequence

    from numpy.typing import NDArray

    from models.flow_models import Profile

__all__: list[str] = [
    "ABOVE",
    "BELOW",
    "BETWEEN",
    "P_PATTERN",
    "Q_PATTERN",
    "chain_alpha_monotonicity",
    "chain_band",
    "chain_monotonicity",
    "classify",
    "exhaustive_chain_length",
    "longest_chain",
    "max_chain_P",
    "max_chain_Q",
    "truncate_length",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

NONE: Final[int] = -1
BELOW: Final[int] = 0
BETWEEN: Final[int] = 1
ABOVE: Final[int] = 2

P_PATTERN: Final[tuple[int, ...]] = (BELOW, BETWEEN, ABOVE, BETWEEN)
Q_PATTERN: Final[tuple[int, ...]] = (BELOW, ABOVE)

type ChainResult = ChainReport | ChainInapplicable


def chain_band(newton_tol: float = 1e-10) -> float:
    """Dead band 1e-6 + 10 * newton_tol around the references."""
    return 1e-6 + 10.0 * newton_tol


def classify(
    values: NDArray[np.float64], lower: NDArray[np.float64], upper: NDArray[np.float64], eps: float
) -> NDArray[np.int8]:
    classes: NDArray[np.int8] = np.full(values.shape, NONE, dtype=np.int8)
    classes[values < lower - eps] = BELOW
    classes[(values > lower + eps) & (values < upper - eps)] = BETWEEN
    classes[values > upper + eps] = ABOVE
    return classes


def longest_chain(classes: NDArray[np.int8], pattern: Sequence[int]) -> NDArray[np.intp]:
    """Leftmost greedy match of the repeating pattern; the match is as long as any subsequence match."""
    positions: dict[int, NDArray[np.intp]] = {symbol: np.flatnonzero(classes == symbol) for symbol in set(pattern)}
    picked: list[int] = []
    cursor: int = -1
    while True:
        candidates: NDArray[np.intp] = positions[pattern[len(picked) % len(pattern)]]
        slot: int = int(np.searchsorted(candidates, cursor, side="right"))
        if slot == candidates.size:
            break
        cursor = int(candidates[slot])
        picked.append(cursor)
    return np.array(picked, dtype=np.intp)


def exhaustive_chain_length(classes: Sequence[int], pattern: Sequence[int]) -> int:
    """Longest subsequence matching the repeating pattern, by dynamic programming over (node, phase)."""
    period: int = len(pattern)
    best: list[int] = [0] * period
    for symbol in reversed(classes):
        best = [
            max(best[phase], 1 + best[(phase + 1) % period]) if symbol == pattern[phase] else best[phase]
            for phase in range(period)
        ]
    return best[0]


def truncate_length(matched: int, modulus: int) -> int:
    """Largest M <= matched with M = 1 (mod modulus); 0 if nothing matched."""
    if matched < 1:
        return 0
    return matched - (matched - 1) % modulus


def _chain_report(
    profile: Profile,
    kind: str,
    classes: NDArray[np.int8],
    pattern: Sequence[int],
    references: list[str],
    quantum_of: Callable[[float], float],
) -> ChainResult:
    radii: NDArray[np.float64] = profile.nodes[1:]
    indices: NDArray[np.intp] = longest_chain(classes, pattern)
    modulus: int = 4 if kind == "P" else 2
    length: int = truncate_length(int(indices.size), modulus)
    if length == 0:
        return ChainInapplicable(kind=kind, time=profile.time, reason="no node below the lower reference on (0, 1]")

    witness_idx: NDArray[np.intp] = indices[:length]
    witness: NDArray[np.float64] = radii[witness_idx]
    cosines: NDArray[np.float64] = np.cos(profile.values[1:][witness_idx])
    k: int = profile.k
    transits: int = (length - 1) // 2 if kind == "P" else length - 1
    quantum: float = quantum_of(float(witness[0]))
    return ChainReport(
        kind=kind,
        time=profile.time,
        max_length=length,
        matched=int(indices.size),
        witness=[float(r) for r in witness],
        references=references,
        energy_quantum=quantum,
        transits=transits,
        energy_floor=transits * quantum,
        witness_energy_bound=2.0 * math.pi * k * float(np.sum(np.abs(np.diff(cosines)))),
        energy=energy(profile),
    )


def max_chain_P(  # noqa: N802
    profile: Profile, alpha: float, eps: float | None = None, upper: float = math.pi
) -> ChainResult:
    """Maximal P-chain against h1 = chi_alpha and h2 = ``upper``.

    Inapplicable unless h(0) < h1(0) and h(1) > h1(1).
    """
    band: float = chain_band() if eps is None else eps
    chi: StationaryProfile = StationaryProfile(StationaryFamily.CHI_ALPHA, alpha=alpha, k=profile.k)
    h1, _ = sample(chi, profile.nodes)
    values: NDArray[np.float64] = profile.values
    if not (values[0] < h1[0] and values[-1] > h1[-1]):
        return ChainInapplicable(kind="P", time=profile.time, reason="h(0) < h1(0) and h(1) > h1(1) do not both hold")

    def transit_cost(first: float) -> float:
        chi_first, _ = sample(chi, np.array([first]))
        return 2.0 * math.pi * profile.k * (1.0 + math.cos(float(chi_first[0])))

    classes: NDArray[np.int8] = classify(values[1:], h1[1:], np.full(values.size - 1, upper), band)
    return _chain_report(profile, "P", classes, P_PATTERN, [chi.label, f"{upper:.6g}"], transit_cost)


def max_chain_Q(  # noqa: N802
    profile: Profile, lower: float = math.pi / 2.0, upper: float = math.pi, eps: float | None = None
) -> ChainResult:
    """Maximal odd-length chain alternating h < ``lower`` and h > ``upper``."""
    band: float = chain_band() if eps is None else eps
    size: int = profile.values.size - 1
    classes: NDArray[np.int8] = classify(profile.values[1:], np.full(size, lower), np.full(size, upper), band)
    quantum: float = 2.0 * math.pi * profile.k * abs(math.cos(lower) - math.cos(upper))
    return _chain_report(
        profile, "Q", classes, Q_PATTERN, [f"{lower:.6g}", f"{upper:.6g}"], lambda _first: quantum
    )


def chain_monotonicity(
    snapshots: Sequence[Profile],
    kind: str,
    *,
    alpha: float = 16.0,
    eps: float | None = None,
    every: int = 1,
) -> tuple[ChainSeries, list[ChainReport]]:
    """Chain lengths along a run sampled every ``every`` snapshots (plus the last one).

    Growth of M forward in time is a violation; inapplicable samples are skipped and counted.
    """
    if kind not in {"P", "Q"}:
        msg = f"Chain kind must be 'P' or 'Q', got {kind!r}"
        raise ValueError(msg)
    if not snapshots:
        return ChainSeries(kind=kind, times=[], lengths=[], verdict=Verdict.INAPPLICABLE), []

    picked: list[Profile] = list(snapshots[:: max(1, every)])
    if picked[-1] is not snapshots[-1]:
        picked.append(snapshots[-1])

    reports: list[ChainReport] = []
    inapplicable: int = 0
    for profile in picked:
        result: ChainResult = (
            max_chain_P(profile, alpha, eps) if kind == "P" else max_chain_Q(profile, eps=eps)
        )
        if isinstance(result, ChainInapplicable):
            inapplicable += 1
            continue
        reports.append(result)

    violations: list[list[float]] = [
        [earlier.time, later.time]
        for earlier, later in zip(reports, reports[1:], strict=False)
        if later.max_length > earlier.max_length
    ]
    verdict: Verdict
    if not reports:
        verdict = Verdict.INAPPLICABLE
    elif violations:
        verdict = Verdict.VIOLATED
        logger.warning("%s-chain length grew forward in time at %d sample pairs", kind, len(violations))
    else:
        verdict = Verdict.PASSED
    series = ChainSeries(
        kind=kind,
        times=[report.time for report in reports],
        lengths=[report.max_length for report in reports],
        verdict=verdict,
        violations=violations,
        inapplicable_count=inapplicable,
    )
    return series, reports


def chain_alpha_monotonicity(
    profile: Profile, alphas: Sequence[float], eps: float | None = None
) -> tuple[list[int], bool]:
    """P-chain lengths for increasing alpha and whether they are non-decreasing."""
    lengths: list[int] = []
    for alpha in sorted(alphas):
        result: ChainResult = max_chain_P(profile, alpha, eps)
        lengths.append(result.max_length if isinstance(result, ChainReport) else 0)
    return lengths, all(a <= b for a, b in zip(lengths, lengths[1:], strict=False))
