"""Scenario plumbing: run configuration, the scenario registry and shared run helpers."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any, ClassVar, Self

from core.blowup.detector import FrontTracker
from core.boundary.boundary_data import spec_from_settings
from core.checkers.comparison import comparison_tolerance
from core.diagnostics.energy import build_ledger
from core.diagnostics.gradient import GradientTracker
from core.grid.radial_grid import GridConfigurationError, build_graded_grid, default_gamma
from core.solver.flow_solver import create_run, solve_until
from core.solver.snapshots import SnapshotRecorder
from models.boundary_models import BoundarySpecError
from models.flow_models import RunStatus, SolverSettings
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from core.solver.flow_solver import FlowObserver
    from handlers.artifact_writer import ArtifactWriter
    from models.boundary_models import BoundaryDataSpec
    from models.config_models import Checks, Config
    from models.flow_models import FlowRun, Profile
    from models.grid_models import RadialGrid
    from models.report_models import EnergyLedger, FrontSample, GradientReport, ScenarioResult

__all__: list[str] = ["Evolution", "RunConfig", "ScenarioBase", "ScenarioError"]

logger: logging.Logger = LoggerUtils.get_logger(__name__)


class ScenarioError(RuntimeError):
    """A scenario cannot be set up from the given configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Everything a scenario needs, resolved from the INI configuration.

    Attributes:
        scenario (str): Scenario name.
        grid (RadialGrid): Validated graded grid.
        spec (BoundaryDataSpec): Boundary data from the [BOUNDARY] section.
        horizon (float): Final time T.
        solver (SolverSettings): Step control.
        checks (Checks): Check tolerances and analyzer parameters.
        bound_multiple (int): m of the uniform bound |h| <= m*pi.
        snapshot_every (int): Accepted steps between recorded snapshots.
        snapshot_limit (int): Most snapshots held per run.
        seed (int): Seed of randomized suites.
    """

    scenario: str
    grid: RadialGrid
    spec: BoundaryDataSpec
    horizon: float
    solver: SolverSettings
    checks: Checks
    bound_multiple: int = 1
    snapshot_every: int = 1
    snapshot_limit: int = 4096
    seed: int = 0

    @property
    def k(self) -> int:
        return self.spec.k

    @classmethod
    def from_config(cls, config: Config) -> Self:
        """Resolve grid, boundary data and solver settings.

        Raises:
            ScenarioError: If the grid or the boundary data are invalid.
        """
        k: int = config.FLOW.K
        try:
            gamma: float = config.GRID.GAMMA or default_gamma(k)
            grid: RadialGrid = build_graded_grid(config.GRID.N, gamma)
            spec: BoundaryDataSpec = spec_from_settings(config.BOUNDARY, k)
        except (GridConfigurationError, BoundarySpecError) as err:
            msg = f"Invalid run configuration: {err}"
            raise ScenarioError(msg) from err

        solver = SolverSettings(
            dt_initial=config.SOLVER.DT_INITIAL,
            dt_min=config.SOLVER.DT_MIN,
            dt_max=config.SOLVER.DT_MAX,
            newton_tol=config.SOLVER.NEWTON_TOL,
            newton_max_iter=config.SOLVER.NEWTON_MAX_ITER,
            dt_growth=config.SOLVER.DT_GROWTH,
            max_step_change=config.SOLVER.MAX_STEP_CHANGE,
        )
        return cls(
            scenario=config.GENERAL.SCENARIO,
            grid=grid,
            spec=spec,
            horizon=config.FLOW.T,
            solver=solver,
            checks=config.CHECKS,
            bound_multiple=config.FLOW.BOUND_MULTIPLE,
            snapshot_every=config.SOLVER.SNAPSHOT_EVERY,
            snapshot_limit=config.SOLVER.SNAPSHOT_LIMIT,
            seed=config.GENERAL.SEED,
        )


@dataclass
class Evolution:
    """Outcome of one observed run."""

    run: FlowRun
    snapshots: list[Profile]
    gradient: GradientReport
    fronts: list[FrontSample]
    ledger: EnergyLedger
    stride: int = 1
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def completed(self) -> bool:
        return self.run.status is RunStatus.COMPLETED_T


class ScenarioBase(ABC):
    """A canonical pipeline: solve, diagnose, check and analyze.

    Subclasses are auto-registered by scenario name.

    Attributes:
        settings (RunConfig): Resolved configuration.
        writer (ArtifactWriter): Owner of the run directory.
    """

    scenario_registry: ClassVar[dict[str, type[ScenarioBase]]] = {}

    def __init_subclass__(cls, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        name: str = cls.fetch_scenario_name()
        if name in cls.scenario_registry:
            msg = f"A scenario with name '{name}' is already registered."
            raise ValueError(msg)
        cls.scenario_registry[name] = cls

    def __init__(self, settings: RunConfig, writer: ArtifactWriter) -> None:
        self.settings: RunConfig = settings
        self.writer: ArtifactWriter = writer

    @staticmethod
    @abstractmethod
    def fetch_scenario_name() -> str:
        raise NotImplementedError

    @abstractmethod
    def execute(self, result: ScenarioResult) -> str:
        """Run the pipeline, append checks and scalars to ``result`` and return the final run status."""
        raise NotImplementedError

    @property
    def grid(self) -> RadialGrid:
        return self.settings.grid

    @property
    def checks(self) -> Checks:
        return self.settings.checks

    def tolerance(self) -> float:
        """Ordering tolerance C * (dr^2 + dt_max)."""
        return comparison_tolerance(self.grid, self.settings.solver.dt_max, self.checks.TOL_FACTOR)

    def new_run(self, spec: BoundaryDataSpec | None = None, initial: NDArray[Any] | None = None) -> FlowRun:
        return create_run(self.grid, spec or self.settings.spec, self.settings.solver, initial=initial)

    def evolve(
        self,
        run: FlowRun,
        horizon: float | None = None,
        observers: Sequence[FlowObserver] = (),
    ) -> Evolution:
        """Solve with snapshot, gradient and front observers attached."""
        recorder = SnapshotRecorder(run, self.settings.snapshot_every, self.settings.snapshot_limit)
        gradient = GradientTracker(run)
        fronts = FrontTracker(run)
        target: float = self.settings.horizon if horizon is None else horizon
        logger.info("Evolving %s to T=%.6g on N=%d", run.spec.describe(), target, self.grid.n)
        solve_until(run, target, observers=[recorder, gradient, fronts, *observers])
        snapshots: list[Profile] = recorder.finalize(run)
        logger.info(
            "Run ended as %s at t=%.9g after %d steps (%d rejected)",
            run.status,
            run.time,
            run.step_count,
            run.rejected_count,
        )
        return Evolution(
            run=run,
            snapshots=snapshots,
            gradient=gradient.finish(snapshots),
            fronts=fronts.samples,
            ledger=build_ledger(snapshots),
            stride=recorder.every,
        )

    def chain_every(self, evolution: Evolution) -> int:
        """Snapshots between chain evaluations, so that chains are taken every CHAIN_EVERY steps."""
        return max(1, self.checks.CHAIN_EVERY // evolution.stride)

    def write_evolution(self, prefix: str, evolution: Evolution) -> None:
        """Snapshots, energy, gradient, fronts and events of one run."""
        self.writer.write_snapshots(f"{prefix}snapshots.csv", evolution.snapshots)
        self.writer.write_energy(f"{prefix}energy.csv", evolution.ledger)
        report: GradientReport = evolution.gradient
        self.writer.write_series(
            f"{prefix}gradient.csv",
            (
                {"time": t, "sup_gradient": g, "running_max": m}
                for t, g, m in zip(report.times, report.sup_gradient, report.running_max, strict=True)
            ),
            ["time", "sup_gradient", "running_max"],
        )
        self.writer.write_series(
            f"{prefix}fronts.csv", (sample.to_dict() for sample in evolution.fronts), ["time", "r_plus", "r_minus"]
        )
        self.writer.write_events(f"{prefix}events.jsonl", evolution.run.event_log)

    @staticmethod
    def run_dir(config: Config) -> Path:
        """OUTPUT_DIR/<scenario>, or RUN_DIR when the caller fixed it."""
        if config.GENERAL.RUN_DIR is not None:
            return config.GENERAL.RUN_DIR
        return Path(config.GENERAL.OUTPUT_DIR or "runs") / config.GENERAL.SCENARIO
