"""Result models for diagnostics, checkers and scenarios.

All report classes serialize through ``DataClassJsonMixin``; verdicts are encoded in the data, never
raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum

from dataclasses_json import DataClassJsonMixin

__all__: list[str] = [
    "BarrierFit",
    "BlowUpSummary",
    "BubbleCount",
    "BubbleFit",
    "ChainInapplicable",
    "ChainReport",
    "ChainSeries",
    "CheckResult",
    "EnergyLedger",
    "EnergySample",
    "FrontSample",
    "GradientReport",
    "LimsupReport",
    "MaximumReport",
    "NoBarrier",
    "OrderingReport",
    "OriginLimitReport",
    "ScenarioResult",
    "SweepCell",
    "SweepReport",
    "Verdict",
]


class Verdict(StrEnum):
    ORDERED = "ordered"
    VIOLATED = "violated"
    INAPPLICABLE = "inapplicable"
    PASSED = "passed"
    INCONCLUSIVE = "inconclusive"


@dataclass
class EnergySample(DataClassJsonMixin):
    """Energy identity evaluated between two snapshots.

    Attributes:
        time (float): Later snapshot time.
        interval (float): t2 - t1.
        energy (float): E at the later snapshot.
        flux (float): 2*pi*h_r(1)*d/dt h0(1) at the midpoint.
        dissipation (float): 2*pi*int h_t^2 r dr at the midpoint.
        rate (float): (E(t2) - E(t1)) / (t2 - t1).
        residual (float): |rate - (flux - dissipation)|.
    """

    time: float
    interval: float
    energy: float
    flux: float
    dissipation: float
    rate: float
    residual: float


@dataclass
class EnergyLedger(DataClassJsonMixin):
    initial_time: float
    initial_energy: float
    samples: list[EnergySample] = field(default_factory=list)

    @property
    def energies(self) -> list[float]:
        return [self.initial_energy, *(sample.energy for sample in self.samples)]

    @property
    def max_residual(self) -> float:
        return max((sample.residual for sample in self.samples), default=0.0)

    @property
    def max_flux(self) -> float:
        return max((abs(sample.flux) for sample in self.samples), default=0.0)

    @property
    def cumulative_dissipation(self) -> float:
        return sum(sample.dissipation * sample.interval for sample in self.samples)

    def non_increasing(self, tol: float) -> bool:
        energies: list[float] = self.energies
        return all(later <= earlier + tol for earlier, later in zip(energies, energies[1:], strict=False))

    def flux_bounded(self, tol: float) -> bool:
        """Running maximum of E stays below E(0) + sup|flux| * (t - t0) + tol."""
        return all(
            sample.energy <= self.initial_energy + self.max_flux * (sample.time - self.initial_time) + tol
            for sample in self.samples
        )

    def dissipation_within_budget(self, tol: float, relative: float = 0.0) -> bool:
        """2*pi int int h_t^2 r dr dt <= E(0) - E(t) (time-independent data)."""
        drop: float = self.initial_energy - self.energies[-1]
        return self.cumulative_dissipation <= drop * (1.0 + relative) + tol


@dataclass
class OrderingReport(DataClassJsonMixin):
    """sub <= super + tol over a space-time sample.

    Attributes:
        label (str): Name of the compared pair.
        pairs_checked (int): Number of (node, time) samples.
        max_violation (float): sup(sub - super); negative values are slack.
        worst_radius (float): Radius of the worst sample.
        worst_time (float): Time of the worst sample.
        tolerance (float): Accepted violation.
        verdict (Verdict): ordered, violated or inapplicable.
        note (str): Reason for inapplicability or other remarks.
    """

    label: str
    pairs_checked: int
    max_violation: float
    worst_radius: float
    worst_time: float
    tolerance: float
    verdict: Verdict
    note: str = ""

    @property
    def ordered(self) -> bool:
        return self.verdict is Verdict.ORDERED


@dataclass
class MaximumReport(DataClassJsonMixin):
    level: float
    t_from: float
    snapshots_checked: int
    max_interior: float
    margin: float
    boundary_max: float
    verdict: Verdict
    offending_time: float | None = None


@dataclass
class BarrierFit(DataClassJsonMixin):
    """theta_{alpha0} >= |h| on [0, r0]."""

    alpha0: float
    r0: float


@dataclass
class NoBarrier(DataClassJsonMixin):
    reason: str


@dataclass
class ChainReport(DataClassJsonMixin):
    """Maximal intersection chain of a profile.

    Attributes:
        kind (str): ``P`` (period four) or ``Q`` (period two).
        time (float): Snapshot time.
        max_length (int): Maximal admissible M (1 mod 4 for P, odd for Q).
        matched (int): Pattern terms matched before the parity truncation.
        witness (list[float]): Radii r_1 < ... < r_M.
        references (list[str]): Lower and upper references.
        energy_quantum (float): Energy floor per transit between the references.
        transits (int): Number of transits in the chain.
        energy_floor (float): transits * energy_quantum.
        witness_energy_bound (float): 2*pi*k * sum |cos h(r_{i+1}) - cos h(r_i)| over the witness.
        energy (float): E of the profile.
    """

    kind: str
    time: float
    max_length: int
    matched: int
    witness: list[float]
    references: list[str]
    energy_quantum: float
    transits: int
    energy_floor: float
    witness_energy_bound: float
    energy: float

    @property
    def parity_ok(self) -> bool:
        modulus: int = 4 if self.kind == "P" else 2
        return self.max_length >= 1 and self.max_length % modulus == 1

    def energy_bounded(self, relative: float = 1e-2) -> bool:
        """Both floors stay below the profile energy up to quadrature slack."""
        cap: float = self.energy * (1.0 + relative) + 1e-12
        return self.energy_floor <= cap and self.witness_energy_bound <= cap


@dataclass
class ChainInapplicable(DataClassJsonMixin):
    kind: str
    time: float
    reason: str


@dataclass
class ChainSeries(DataClassJsonMixin):
    """Chain lengths along a run; forward growth is a violation."""

    kind: str
    times: list[float]
    lengths: list[int]
    verdict: Verdict
    violations: list[list[float]] = field(default_factory=list)
    inapplicable_count: int = 0


@dataclass
class BlowUpSummary(DataClassJsonMixin):
    detect_time: float
    max_gradient: float
    argmax_radius: float
    trigger: str
    threshold: float
    buffered: int
    concentrated: bool
    buffer_times: list[float] = field(default_factory=list)


@dataclass
class BubbleFit(DataClassJsonMixin):
    """Fit of a rescaled snapshot to m*pi + sign*2*arctan((alpha*rho)^k).

    Attributes:
        time (float): Snapshot time T_n.
        scale (float): Extraction scale R_n = 2k / max|h_r|.
        alpha_est (float): Fitted alpha in rescaled coordinates.
        sign (int): +1 for upward transit, -1 for downward.
        m_offset (int): Multiple of pi at the inner end.
        sup_error (float): Sup fit error on the window (radians).
        relative_error (float): sup_error / pi.
        window_lo (float): Inner window end (rescaled).
        window_hi (float): Outer window end (rescaled).
        slope_est (float): Free log-log slope; k for a perfect fit.
        max_gradient (float): max|h_r| of the snapshot.
    """

    time: float
    scale: float
    alpha_est: float
    sign: int
    m_offset: int
    sup_error: float
    relative_error: float
    window_lo: float
    window_hi: float
    slope_est: float
    max_gradient: float

    @property
    def physical_alpha(self) -> float:
        return self.alpha_est / self.scale

    @property
    def bubble_scale(self) -> float:
        """Radius at which the fitted transit is half done."""
        return self.scale / self.alpha_est


@dataclass
class BubbleCount(DataClassJsonMixin):
    time: float
    r_limit: float
    count: int
    intervals: list[list[float]] = field(default_factory=list)


@dataclass
class FrontSample(DataClassJsonMixin):
    time: float
    r_plus: float
    r_minus: float


@dataclass
class OriginLimitReport(DataClassJsonMixin):
    time: float
    scale: float
    window_lo: float
    window_hi: float
    nearest_multiple: int
    deviation: float
    verdict: Verdict


@dataclass
class LimsupReport(DataClassJsonMixin):
    """Reach of pi near the origin and the global cap along the blow-up buffer."""

    buffered: int
    max_near_origin: float
    reaches_pi: bool
    max_overall: float
    upper_cap: float
    within_cap: bool

    @property
    def verdict(self) -> Verdict:
        return Verdict.PASSED if self.reaches_pi and self.within_cap else Verdict.VIOLATED


@dataclass
class GradientReport(DataClassJsonMixin):
    """Gradient growth along a run.

    Attributes:
        times (list[float]): Sample times.
        sup_gradient (list[float]): ||h_r(., t)||_inf.
        running_max (list[float]): max over s <= t of sup_gradient.
        scaling (dict[str, float]): lambda -> lambda * sup over [lambda, 1] and t in [T/2, T] of |h_r|.
    """

    times: list[float] = field(default_factory=list)
    sup_gradient: list[float] = field(default_factory=list)
    running_max: list[float] = field(default_factory=list)
    scaling: dict[str, float] = field(default_factory=dict)


@dataclass
class CheckResult(DataClassJsonMixin):
    """One verdict of a scenario; inapplicable checks are reported but do not enter the exit code."""

    name: str
    passed: bool
    value: float | None = None
    detail: str = ""
    applicable: bool = True

    @property
    def failed(self) -> bool:
        return self.applicable and not self.passed


@dataclass
class ScenarioResult(DataClassJsonMixin):
    """Top-level report of one scenario run.

    Attributes:
        schema_version (int): Report layout version.
        scenario (str): Scenario name.
        status (str): Final run status (or ``n/a`` for scenarios without a single run).
        checks (list[CheckResult]): Enabled checks with their verdicts.
        scalars (dict[str, float]): Key numbers (energies, detection time, chain lengths ...).
        exit_code (int): 0 iff every applicable check passed.
    """

    schema_version: int
    scenario: str
    status: str
    checks: list[CheckResult] = field(default_factory=list)
    scalars: dict[str, float] = field(default_factory=dict)
    exit_code: int = 0

    @property
    def passed(self) -> bool:
        return not any(check.failed for check in self.checks)

    @property
    def failed_checks(self) -> list[str]:
        return [check.name for check in self.checks if check.failed]

    @property
    def skipped_checks(self) -> list[str]:
        return [check.name for check in self.checks if not check.applicable]

    def add(self, name: str, passed: bool, value: float | None = None, detail: str = "") -> CheckResult:  # noqa: FBT001
        result: CheckResult = CheckResult(name=name, passed=bool(passed), value=value, detail=detail)
        self.checks.append(result)
        return result

    def add_verdict(self, name: str, verdict: Verdict, value: float | None = None, note: str = "") -> CheckResult:
        """Record a checker verdict; ``inapplicable`` is kept apart from passes and failures."""
        detail: str = f"{verdict}: {note}" if note else str(verdict)
        result: CheckResult = CheckResult(
            name=name,
            passed=verdict in {Verdict.ORDERED, Verdict.PASSED},
            value=value,
            detail=detail,
            applicable=verdict is not Verdict.INAPPLICABLE,
        )
        self.checks.append(result)
        return result

    def seal(self) -> ScenarioResult:
        self.exit_code = 0 if self.passed else 1
        return self


@dataclass
class SweepCell(DataClassJsonMixin):
    value: float
    directory: str
    exit_code: int
    failed_checks: list[str] = field(default_factory=list)
    scalars: dict[str, float] = field(default_factory=dict)
    error: str = ""


@dataclass
class SweepReport(DataClassJsonMixin):
    """Aggregate of one scenario run across a parameter axis.

    Attributes:
        schema_version (int): Report layout version.
        scenario (str): Scenario run in every cell.
        axis (str): Swept parameter.
        cells (list[SweepCell]): One entry per axis value, in axis order.
        observed_order (list[float]): Refinement orders between successive cells (axis ``n`` only).
        exit_code (int): 0 iff every cell passed.
    """

    schema_version: int
    scenario: str
    axis: str
    cells: list[SweepCell] = field(default_factory=list)
    observed_order: list[float] = field(default_factory=list)
    exit_code: int = 0
