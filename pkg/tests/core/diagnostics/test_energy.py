"""Tests for energy diagnostics."""

from __future__ import annotations

import math

import numpy as np
import pytest

from core.boundary.boundary_data import evaluate_profile
from core.diagnostics.energy import (
    DegenerateIntervalError,
    EnergyDiagnosticsError,
    build_ledger,
    energy,
    energy_rate_check,
    sacks_uhlenbeck_residual,
)
from core.diagnostics.gradient import GradientTracker, gradient_scaling, sup_gradient
from core.grid.radial_grid import build_graded_grid
from core.solver.flow_solver import create_run, solve_until
from core.solver.snapshots import SnapshotRecorder
from core.stationary.library import StationaryFamily, StationaryProfile, sample
from models.boundary_models import BoundaryDataSpec, FourArctan
from models.flow_models import Profile, SolverSettings


def _stationary(sp: StationaryProfile, n: int) -> tuple[Profile, np.ndarray]:
    grid = build_graded_grid(n, 2.0)
    values, slope = sample(sp, grid.nodes)
    return Profile(grid=grid, values=values, time=0.0, k=sp.k), slope


class TestEnergy:
    def test_zero(self) -> None:
        grid = build_graded_grid(64, 2.0)
        assert energy(Profile(grid=grid, values=np.zeros(grid.size), time=0.0, k=1)) == 0.0

    def test_pi(self) -> None:
        grid = build_graded_grid(64, 2.0)
        assert energy(Profile(grid=grid, values=np.full(grid.size, math.pi), time=0.0, k=2)) < 1e-25

    def test_theta_one_carries_two_pi(self) -> None:
        profile, _ = _stationary(StationaryProfile(StationaryFamily.THETA_ALPHA), 1024)
        assert energy(profile) == pytest.approx(2.0 * math.pi, rel=5e-3)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_energy_grows_with_scale(self, k: int) -> None:
        energies = [
            energy(_stationary(StationaryProfile(StationaryFamily.THETA_ALPHA, alpha=a, k=k), 512)[0])
            for a in (0.5, 1.0, 2.0, 4.0)
        ]
        assert energies == sorted(energies)
        # closed form 4*pi*k * a^(2k) / (1 + a^(2k))
        assert energies[-1] == pytest.approx(4 * math.pi * k * 4 ** (2 * k) / (1 + 4 ** (2 * k)), rel=1e-2)


class TestEnergyRate:
    def test_degenerate_interval(self) -> None:
        profile, _ = _stationary(StationaryProfile(StationaryFamily.THETA_ALPHA), 64)
        with pytest.raises(DegenerateIntervalError):
            energy_rate_check(profile, profile)

    def test_grid_mismatch(self) -> None:
        coarse, _ = _stationary(StationaryProfile(StationaryFamily.THETA_ALPHA), 64)
        fine, _ = _stationary(StationaryProfile(StationaryFamily.THETA_ALPHA), 128)
        with pytest.raises(EnergyDiagnosticsError, match="same grid"):
            energy_rate_check(coarse, fine.with_values(fine.values, 1.0))

    def test_frozen_profile_has_zero_rate(self) -> None:
        profile, _ = _stationary(StationaryProfile(StationaryFamily.THETA_ALPHA), 128)
        sample_ = energy_rate_check(profile, profile.with_values(profile.values, 0.5))
        assert sample_.rate == 0.0
        assert sample_.flux == 0.0
        assert sample_.dissipation == 0.0
        assert sample_.residual == 0.0

    def test_global_run_loses_energy(self) -> None:
        grid = build_graded_grid(64, 2.0)
        run = create_run(grid, BoundaryDataSpec(kind=FourArctan()), SolverSettings(dt_initial=1e-3, dt_max=2e-2))
        recorder = SnapshotRecorder(run)
        solve_until(run, 0.5, observers=[recorder])
        ledger = build_ledger(recorder.finalize(run))
        assert all(s.flux == 0.0 for s in ledger.samples)
        assert ledger.non_increasing(1e-5)
        assert ledger.energies[-1] < ledger.initial_energy
        assert ledger.flux_bounded(1e-6)
        assert ledger.dissipation_within_budget(1e-6, relative=0.05)
        assert ledger.max_residual < 0.25 * max(s.dissipation for s in ledger.samples)

    def test_empty_ledger(self) -> None:
        with pytest.raises(EnergyDiagnosticsError):
            build_ledger([])


class TestSacksUhlenbeck:
    @pytest.mark.parametrize("family", [StationaryFamily.THETA_ALPHA, StationaryFamily.CHI_ALPHA])
    @pytest.mark.parametrize(("alpha", "k"), [(0.5, 1), (4.0, 2), (16.0, 3)])
    def test_closed_form_slope(self, family: StationaryFamily, alpha: float, k: int) -> None:
        profile, slope = _stationary(StationaryProfile(family, alpha=alpha, k=k), 256)
        residual = sacks_uhlenbeck_residual(profile, np.zeros(profile.grid.size), h_r=slope)
        assert np.max(np.abs(residual)) <= 1e-10

    def test_grid_slope_converges(self) -> None:
        errors = []
        for n in (128, 256, 512):
            profile, _ = _stationary(StationaryProfile(StationaryFamily.THETA_ALPHA, alpha=2.0), n)
            errors.append(float(np.max(np.abs(sacks_uhlenbeck_residual(profile, np.zeros(profile.grid.size))))))
        assert errors[2] < errors[1] < errors[0]
        assert math.log2(errors[1] / errors[2]) >= 1.8

    def test_zero(self) -> None:
        grid = build_graded_grid(32, 2.0)
        profile = Profile(grid=grid, values=np.zeros(grid.size), time=0.0, k=1)
        assert np.all(sacks_uhlenbeck_residual(profile, np.zeros(grid.size)) == 0.0)

    def test_half_pi_constant_violates_identity(self) -> None:
        grid = build_graded_grid(32, 2.0)
        profile = Profile(grid=grid, values=np.full(grid.size, math.pi / 2), time=0.0, k=1)
        residual = sacks_uhlenbeck_residual(profile, np.zeros(grid.size))
        assert residual[-1] == pytest.approx(1.0)


class TestGradient:
    def test_sup_gradient_of_theta(self) -> None:
        profile, _ = _stationary(StationaryProfile(StationaryFamily.THETA_ALPHA, alpha=8.0), 512)
        value, radius = sup_gradient(profile)
        assert value == pytest.approx(16.0, rel=1e-3)
        assert radius == 0.0

    def test_scaling_uses_late_half(self) -> None:
        grid = build_graded_grid(64, 2.0)
        early = Profile(grid=grid, values=10.0 * grid.nodes, time=0.0, k=1)
        late = Profile(grid=grid, values=grid.nodes, time=1.0, k=1)
        scaling = gradient_scaling([early, late], lambdas=(0.1, 0.5))
        assert scaling == pytest.approx({"0.1": 0.1, "0.5": 0.5})

    def test_tracker_running_max(self) -> None:
        grid = build_graded_grid(64, 2.0)
        run = create_run(grid, BoundaryDataSpec(kind=FourArctan()), SolverSettings(dt_initial=1e-3))
        tracker = GradientTracker(run)
        solve_until(run, 0.05, observers=[tracker])
        report = tracker.finish([run.profile])
        assert len(report.times) == run.step_count + 1
        assert report.running_max == sorted(report.running_max)
        assert set(report.scaling) == {"0.1", "0.2", "0.4"}


def test_four_arctan_seed_energy() -> None:
    grid = build_graded_grid(512, 2.0)
    values = evaluate_profile(BoundaryDataSpec(kind=FourArctan()), grid.nodes, 0.0)
    # pi * (4 + 4/3)
    assert energy(Profile(grid=grid, values=values, time=0.0, k=1)) == pytest.approx(16.0 * math.pi / 3.0, rel=1e-3)
