"""Configuration data models for harmonic-flow runs.

One dataclass per INI section; field names match the INI keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from pathlib import Path

__all__: list[str] = [
    "Boundary",
    "Checks",
    "Config",
    "Flow",
    "General",
    "Grid",
    "Solver",
    "Sweep",
]


@dataclass
class General:
    DEBUG: bool = False
    SCENARIO: str = "stationary"
    OUTPUT_DIR: str = ""
    SEED: int = 0
    JOBS: int = 1
    VERSION: str = ""  # Hidden settings that are not published in the INI file.
    SCRIPT_NAME: str = ""  # Hidden settings that are not published in the INI file.
    RUN_DIR: Path | None = None  # Hidden settings that are not published in the INI file.


@dataclass
class Flow:
    K: int = 1
    T: float = 1.0
    BOUND_MULTIPLE: int = 1


@dataclass
class Grid:
    N: int = 512
    GAMMA: float = 0.0  # 0 selects max(2, k)


@dataclass
class Boundary:
    KIND: str = "stationary_arctan"
    ALPHA: float = 1.0
    SIGN: int = 1
    OFFSET_M: int = 0
    SLOPE: float = 3.5
    VALUE: float = 0.0
    SAMPLES: list[list[float]] = field(default_factory=list)
    MODULATION: str = "none"
    MODULATION_AMPLITUDE: float = 0.0
    MODULATION_FREQUENCY: float = 1.0


@dataclass
class Solver:
    DT_INITIAL: float = 1e-6
    DT_MIN: float = 1e-12
    DT_MAX: float = 1e-2
    NEWTON_TOL: float = 1e-10
    NEWTON_MAX_ITER: int = 30
    DT_GROWTH: float = 1.2
    MAX_STEP_CHANGE: float = 0.7853981633974483
    SNAPSHOT_EVERY: int = 1
    SNAPSHOT_LIMIT: int = 4096


@dataclass
class Checks:
    TOL_BAND: float = 1e-6
    G_MAX: float = 1e6
    TAU_SHIFT: float = 0.01
    TOL_FACTOR: float = 10.0
    BUFFER_SIZE: int = 64
    MIN_SCALE_GRADIENT: float = 100.0
    FALLBACK_SLOPE: float = 4.5
    CHAIN_ALPHA: float = 16.0
    CHAIN_EVERY: int = 100
    DRIFT_TOL: float = 1e-3
    LIMSUP_REACH: float = 0.9


@dataclass
class Sweep:
    SCENARIO: str = "stationary"
    AXIS: str = "k"
    VALUES: list[float] = field(default_factory=list)


@dataclass
class Config:
    GENERAL: General = field(default_factory=General)
    FLOW: Flow = field(default_factory=Flow)
    GRID: Grid = field(default_factory=Grid)
    BOUNDARY: Boundary = field(default_factory=Boundary)
    SOLVER: Solver = field(default_factory=Solver)
    CHECKS: Checks = field(default_factory=Checks)
    SWEEP: Sweep = field(default_factory=Sweep)
