"""Tests for intersection chains."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.checkers.chains import (
    ABOVE,
    BELOW,
    BETWEEN,
    P_PATTERN,
    Q_PATTERN,
    chain_alpha_monotonicity,
    chain_band,
    chain_monotonicity,
    classify,
    exhaustive_chain_length,
    longest_chain,
    max_chain_P,
    max_chain_Q,
    truncate_length,
)
from core.grid.radial_grid import build_graded_grid
from models.flow_models import Profile
from models.report_models import ChainInapplicable, ChainReport, Verdict

KNOTS_R = (0.0, 0.3, 0.6, 1.0)
KNOTS_H = (0.0, 3.3, 1.0, 3.4)
DIPPED_R = (0.0, 0.3, 0.6, 0.8, 1.0)
DIPPED_H = (0.0, 3.3, 1.0, 0.05, 3.4)


def _knots(radii: tuple[float, ...], values: tuple[float, ...], time: float = 0.0, n: int = 256) -> Profile:
    grid = build_graded_grid(n, 1.0)
    return Profile(grid=grid, values=np.interp(grid.nodes, radii, values), time=time, k=1)


def _brute_force(classes: list[int], pattern: tuple[int, ...]) -> int:
    for size in range(len(classes), 0, -1):
        for picked in itertools.combinations(classes, size):
            if all(symbol == pattern[i % len(pattern)] for i, symbol in enumerate(picked)):
                return size
    return 0


class TestClassify:
    def test_dead_band(self) -> None:
        values = np.array([0.0, 1.0 - 1e-9, 1.5, 2.0 + 1e-9, 3.0])
        classes = classify(values, np.ones(5), np.full(5, 2.0), eps=1e-6)
        assert classes.tolist() == [BELOW, -1, BETWEEN, -1, ABOVE]

    def test_band_default(self) -> None:
        assert chain_band() == pytest.approx(1e-6 + 1e-9)
        assert chain_band(1e-8) == pytest.approx(1.1e-6)


@pytest.mark.parametrize(
    ("matched", "modulus", "expected"),
    [(0, 4, 0), (1, 4, 1), (4, 4, 1), (7, 4, 5), (4, 2, 3), (5, 2, 5)],
)
def test_truncate_length(matched: int, modulus: int, expected: int) -> None:
    assert truncate_length(matched, modulus) == expected


class TestQChain:
    def test_knot_profile(self) -> None:
        report = max_chain_Q(_knots(KNOTS_R, KNOTS_H))
        assert isinstance(report, ChainReport)
        assert report.max_length == 3
        assert report.matched == 4
        assert report.parity_ok
        assert report.witness == sorted(report.witness)
        assert 0.28 < report.witness[1] <= 0.3
        assert 0.52 < report.witness[2] <= 0.6
        assert report.transits == 2
        assert report.energy_quantum == pytest.approx(2.0 * math.pi)
        assert report.energy_bounded()

    def test_no_node_below_is_inapplicable(self) -> None:
        grid = build_graded_grid(64, 2.0)
        result = max_chain_Q(Profile(grid=grid, values=np.full(grid.size, math.pi), time=0.0, k=1))
        assert isinstance(result, ChainInapplicable)

    def test_monotone_profile_has_trivial_chain(self) -> None:
        report = max_chain_Q(_knots((0.0, 1.0), (0.0, math.pi)))
        assert isinstance(report, ChainReport)
        assert report.max_length == 1
        assert report.energy_floor == 0.0


class TestPChain:
    def test_single_excursion(self) -> None:
        report = max_chain_P(_knots(KNOTS_R, KNOTS_H), alpha=16.0)
        assert isinstance(report, ChainReport)
        assert report.matched == 4
        assert report.max_length == 1
        assert report.transits == 0

    def test_dip_below_chi_extends_the_chain(self) -> None:
        report = max_chain_P(_knots(DIPPED_R, DIPPED_H), alpha=16.0)
        assert isinstance(report, ChainReport)
        assert report.matched == 7
        assert report.max_length == 5
        assert report.parity_ok
        assert report.transits == 2
        assert report.witness == sorted(report.witness)
        assert report.energy_bounded()

    def test_requires_crossing_of_chi(self) -> None:
        grid = build_graded_grid(64, 2.0)
        result = max_chain_P(Profile(grid=grid, values=np.zeros(grid.size), time=0.0, k=1), alpha=4.0)
        assert isinstance(result, ChainInapplicable)

    def test_non_decreasing_in_alpha(self) -> None:
        lengths, ordered = chain_alpha_monotonicity(_knots(DIPPED_R, DIPPED_H), [16.0, 1.0, 4.0])
        assert lengths == [5, 5, 5]
        assert ordered


class TestChainSeries:
    def test_forward_growth_is_flagged(self) -> None:
        snapshots = [_knots((0.0, 1.0), (0.0, math.pi), time=0.0), _knots(KNOTS_R, KNOTS_H, time=1.0)]
        series, reports = chain_monotonicity(snapshots, "Q")
        assert series.lengths == [1, 3]
        assert series.verdict is Verdict.VIOLATED
        assert series.violations == [[0.0, 1.0]]
        assert len(reports) == 2

    def test_decay_passes(self) -> None:
        snapshots = [_knots(KNOTS_R, KNOTS_H, time=0.0), _knots((0.0, 1.0), (0.0, math.pi), time=1.0)]
        series, _ = chain_monotonicity(snapshots, "Q")
        assert series.verdict is Verdict.PASSED

    def test_sampling_keeps_last(self) -> None:
        snapshots = [_knots(KNOTS_R, KNOTS_H, time=float(t)) for t in range(5)]
        series, _ = chain_monotonicity(snapshots, "P", alpha=16.0, every=3)
        assert series.times == [0.0, 3.0, 4.0]

    def test_inapplicable_samples_are_counted(self) -> None:
        grid = build_graded_grid(32, 2.0)
        snapshots = [Profile(grid=grid, values=np.zeros(grid.size), time=0.0, k=1)]
        series, reports = chain_monotonicity(snapshots, "P", alpha=4.0)
        assert series.verdict is Verdict.INAPPLICABLE
        assert series.inapplicable_count == 1
        assert reports == []

    def test_unknown_kind(self) -> None:
        with pytest.raises(ValueError, match="kind"):
            chain_monotonicity([], "R")


@given(classes=st.lists(st.sampled_from([-1, BELOW, BETWEEN, ABOVE]), max_size=12))
@settings(max_examples=200, deadline=None)
def test_greedy_matches_exhaustive_search(classes: list[int]) -> None:
    encoded = np.array(classes, dtype=np.int8)
    for pattern in (P_PATTERN, Q_PATTERN):
        greedy = int(longest_chain(encoded, pattern).size)
        assert greedy == exhaustive_chain_length(classes, pattern)
        assert greedy == _brute_force(classes, pattern)


@given(
    knots=st.lists(st.floats(min_value=-0.5, max_value=4.0), min_size=2, max_size=8),
)
@settings(max_examples=50, deadline=None)
def test_greedy_on_random_profiles(knots: list[float]) -> None:
    radii = tuple(np.linspace(0.0, 1.0, len(knots) + 1))
    profile = _knots(radii, (0.0, *knots), n=128)
    result = max_chain_Q(profile)
    classes = classify(profile.values[1:], np.full(128, math.pi / 2), np.full(128, math.pi), chain_band())
    expected = truncate_length(exhaustive_chain_length(classes.tolist(), Q_PATTERN), 2)
    if isinstance(result, ChainReport):
        assert result.max_length == expected
        assert result.max_length % 2 == 1
    else:
        assert expected == 0
