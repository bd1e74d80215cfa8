"""Stationary data evolved with frozen boundary values must not move."""

from __future__ import annotations

from typing import TYPE_CHECKING, Final, override

import numpy as np

from core.boundary.boundary_data import validate_spec
from core.diagnostics.energy import energy, sacks_uhlenbeck_residual
from core.scenarios.base import ScenarioBase, ScenarioError
from core.solver.operator import evaluate_tau
from core.solver.reconstruction import reconstruct_map
from models.boundary_models import Constant, StationaryArctan

if TYPE_CHECKING:
    from models.flow_models import Profile
    from models.report_models import ScenarioResult

__all__: list[str] = ["StationaryScenario"]

SPHERE_TOLERANCE: Final[float] = 1e-12


class StationaryScenario(ScenarioBase):
    @staticmethod
    @override
    def fetch_scenario_name() -> str:
        return "stationary"

    @override
    def execute(self, result: ScenarioResult) -> str:
        spec = self.settings.spec
        if not spec.time_independent or not isinstance(spec.kind, StationaryArctan | Constant):
            msg = f"Scenario 'stationary' needs time-independent stationary data, got {spec.describe()}"
            raise ScenarioError(msg)
        self.writer.write_json("validation.json", validate_spec(spec, self.grid, self.settings.horizon))

        run = self.new_run()
        seed: Profile = run.profile
        tau_sup: float = float(np.max(np.abs(evaluate_tau(seed))))
        identity: float = float(np.max(np.abs(sacks_uhlenbeck_residual(seed, np.zeros(self.grid.size)))))

        evolution = self.evolve(run)
        drift: float = max(float(np.max(np.abs(profile.values - seed.values))) for profile in evolution.snapshots)
        ledger = evolution.ledger

        result.add("solver_completed", evolution.completed, detail=str(run.status))
        result.add("drift", drift <= self.checks.DRIFT_TOL, drift, f"tolerance {self.checks.DRIFT_TOL:g}")
        result.add("energy_non_increasing", ledger.non_increasing(self.checks.TOL_BAND))
        sphere: float = max(reconstruct_map(profile).norm_defect() for profile in evolution.snapshots)
        result.add("unit_sphere", sphere <= SPHERE_TOLERANCE, sphere)
        result.scalars.update(
            {
                "drift": drift,
                "tau_sup": tau_sup,
                "identity_residual": identity,
                "energy_initial": energy(seed),
                "energy_final": ledger.energies[-1],
                "steps": float(run.step_count),
            }
        )
        self.write_evolution("", evolution)
        return str(run.status)
