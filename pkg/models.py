"""Pydantic models for data validation and serialization."""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, StringConstraints, model_validator

Bits = Annotated[str, StringConstraints(pattern=r"^[01]*$")]


class DyadicRational(BaseModel):
    """Exact value numerator / 2**exponent, always stored in lowest terms."""

    model_config = ConfigDict(frozen=True)

    numerator: int = Field(ge=0)
    exponent: int = Field(ge=0)

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        if isinstance(data, dict):
            numerator = data.get("numerator", 0)
            exponent = data.get("exponent", 0)
            if numerator == 0:
                exponent = 0
            while exponent > 0 and numerator % 2 == 0:
                numerator //= 2
                exponent -= 1
            data = {**data, "numerator": numerator, "exponent": exponent}
        return data

    @classmethod
    def zero(cls) -> DyadicRational:
        return cls(numerator=0, exponent=0)

    @classmethod
    def power_of_half(cls, k: int) -> DyadicRational:
        """The value 2**-k."""
        return cls(numerator=1, exponent=k)

    @classmethod
    def from_bits(cls, bits: str) -> DyadicRational:
        """Value of the binary fraction 0.bits."""
        return cls(numerator=int(bits, 2) if bits else 0, exponent=len(bits))

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __add__(self, other: DyadicRational) -> DyadicRational:
        exponent = max(self.exponent, other.exponent)
        numerator = (self.numerator << (exponent - self.exponent)) + (
            other.numerator << (exponent - other.exponent)
        )
        return DyadicRational(numerator=numerator, exponent=exponent)

    def __lt__(self, other: DyadicRational) -> bool:
        return self.to_fraction() < other.to_fraction()

    def __le__(self, other: DyadicRational) -> bool:
        return self.to_fraction() <= other.to_fraction()

    def __gt__(self, other: DyadicRational) -> bool:
        return self.to_fraction() > other.to_fraction()

    def __ge__(self, other: DyadicRational) -> bool:
        return self.to_fraction() >= other.to_fraction()

    def leading_bits(self, n: int) -> str:
        """First n bits after the binary point (zero-tail representation)."""
        if self.numerator >= (1 << self.exponent):
            raise ValueError("leading_bits needs a value in [0, 1)")
        if n == 0:
            return ""
        if n >= self.exponent:
            scaled = self.numerator << (n - self.exponent)
        else:
            scaled = self.numerator >> (self.exponent - n)
        return format(scaled, f"0{n}b")

    def truncate(self, n: int) -> DyadicRational:
        """The value of the first n bits, i.e. floor(value * 2**n) / 2**n."""
        return DyadicRational.from_bits(self.leading_bits(n))

    @property
    def numerator_hex(self) -> str:
        return format(self.numerator, "x")


# ---------------------------------------------------------------------------
# Reference machine
# ---------------------------------------------------------------------------


class RunMode(str, Enum):
    PREFIX = "prefix"
    PLAIN = "plain"


class RunStatus(str, Enum):
    HALTED = "halted"
    BUDGET_EXHAUSTED = "budget_exhausted"
    INVALID = "invalid"


class MachineSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    version: str
    instruction_set: List[Tuple[str, str, str]]
    discipline: str
    max_output_bits: int


class PrefixProgram(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: Bits
    condition: Bits = ""


class RunOutcome(BaseModel):
    status: RunStatus
    output: Optional[Bits] = None
    steps_used: int
    bits_consumed: int
    needs_input: bool = False
    saw_end: bool = False

    @property
    def halted(self) -> bool:
        return self.status is RunStatus.HALTED


class ComplexityKind(str, Enum):
    C = "C"
    K = "K"


class ComplexityEstimate(BaseModel):
    kind: ComplexityKind
    value: int
    conditional_on: Optional[Bits] = None
    step_budget: int
    max_program_length: int
    witness: PrefixProgram
    fallback: bool = False
    machine_version: str


class CompressorEstimate(BaseModel):
    codec: str
    value: int
    header_bits: int
    payload_bits: int
    original_length: int


class OscillationPoint(BaseModel):
    n: int
    deficiency: int
    complexity_upper: int


# ---------------------------------------------------------------------------
# Omega
# ---------------------------------------------------------------------------


class ContributingProgram(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: Bits
    steps: int
    phase: int


class OmegaTracePoint(BaseModel):
    phase: int
    numerator_hex: str
    exponent: int
    halted: int


class OmegaApproximation(BaseModel):
    value: DyadicRational
    contributing: List[ContributingProgram]
    max_len: int
    phases: int
    exhausted: int = 0
    trace: List[OmegaTracePoint] = Field(default_factory=list)
    machine_version: str


# ---------------------------------------------------------------------------
# Martin-Lof tests
# ---------------------------------------------------------------------------


class TestRecord(BaseModel):
    __test__ = False

    name: str
    n: int
    level: int
    significance: float
    certificate: str


class AxiomRow(BaseModel):
    test: str
    n: int
    m: int
    count: int
    bound: int
    ok: bool


class SequentialResult(BaseModel):
    name: str
    horizon: int
    sup: int
    running_sup: List[int]
    rejected: bool
    verdict: str


# ---------------------------------------------------------------------------
# Finite-string statistics
# ---------------------------------------------------------------------------


class McRecord(BaseModel):
    seed: int
    n: int
    statistic: str
    value: float
    bound: float
    satisfied: bool


# ---------------------------------------------------------------------------
# Place selection
# ---------------------------------------------------------------------------


class Decision(str, Enum):
    SELECT = "select"
    SKIP = "skip"
    UNDEFINED = "undefined"


class MwcSelection(BaseModel):
    bits: Bits
    indices: List[int]
    truncated: bool = False


class KlVisit(BaseModel):
    index: int
    value: int
    included: bool


class KlSelection(BaseModel):
    bits: Bits
    visits: List[KlVisit]


class FrequencyProfile(BaseModel):
    """Cumulative ones count f_n for n = 1..horizon."""

    ones: List[int]

    @property
    def horizon(self) -> int:
        return len(self.ones)

    def ratio(self, n: int) -> float:
        return self.ones[n - 1] / n

    def points(self) -> List[Tuple[int, int, float]]:
        return [(n, f, f / n) for n, f in enumerate(self.ones, start=1)]


class StabilityReport(BaseModel):
    horizon: int
    p: float
    eps: float
    final_ratio: float
    max_excursion: float
    last_crossing: Optional[int] = None
    last_exceedance: Optional[int] = None
    ville: bool


# ---------------------------------------------------------------------------
# Tournaments
# ---------------------------------------------------------------------------


class Tournament(BaseModel):
    """Orientation bit for pair {i, j}, i < j, is 1 iff (i, j) is in T (j dominates i)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    orientation: Bits

    @model_validator(mode="after")
    def _check_length(self) -> Tournament:
        if len(self.orientation) != self.n * (self.n - 1) // 2:
            raise ValueError(
                f"orientation has {len(self.orientation)} bits, expected {self.n * (self.n - 1) // 2}"
            )
        return self

    def pair_index(self, i: int, j: int) -> int:
        """Position of pair (i, j), 1 <= i < j <= n, in the order (1,2),(1,3),...,(2,3),..."""
        return (i - 1) * self.n - (i - 1) * i // 2 + (j - i - 1)

    def has_edge(self, i: int, j: int) -> bool:
        """True iff (i, j) is in T, i.e. j dominates i."""
        if i == j:
            return False
        if i < j:
            return self.orientation[self.pair_index(i, j)] == "1"
        return self.orientation[self.pair_index(j, i)] == "0"


class TransitiveWitness(BaseModel):
    """Nodes listed so that every later node dominates every earlier one."""

    nodes: List[int]

    @property
    def size(self) -> int:
        return len(self.nodes)


class CompressedTournament(BaseModel):
    bits: Bits
    n: int
    v: int


class SampleCheckReport(BaseModel):
    n: int
    trials: int
    seed: int
    bound: int
    fraction: float
    ci_low: float
    ci_high: float
    theorem_bound: int
    theorem_fraction: float
    target: float


# ---------------------------------------------------------------------------
# Chaos and prediction
# ---------------------------------------------------------------------------


class Observable(str, Enum):
    GAMMA0 = "gamma0"
    GAMMA1 = "gamma1"


class PredictorReport(BaseModel):
    predictor: str
    steps: int
    accuracy: float


class SquaredErrorTrace(BaseModel):
    seed: int
    horizon: int
    cumulative: List[float]
    reference: float

    @property
    def final(self) -> float:
        return self.cumulative[-1] if self.cumulative else 0.0


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class ReportHeader(BaseModel):
    command: str
    machine_version: str
    machine: MachineSpec
    prng_version: str
    calibration_c: float
    calibration_c1: float
    config_digest: str
    timestamp: Optional[str] = None
