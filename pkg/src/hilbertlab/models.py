"""Pydantic models shared by the library, the services and the HTTP surface."""

import math
from enum import Enum

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    computed_field,
    field_validator,
)

from hilbertlab import descriptors
from hilbertlab.config import settings
from hilbertlab.errors import DescriptorError


class Provenance(str, Enum):
    """Where a target value comes from."""

    PAPER = "PAPER"
    DERIVED = "DERIVED"
    TRIVIAL = "TRIVIAL"


class VerdictStatus(str, Enum):
    """Outcome of a single check."""

    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class TrendStatus(str, Enum):
    """Behaviour of a running supremum under grid refinement."""

    STABLE = "stable"
    DIVERGING = "diverging"
    UNDETERMINED = "undetermined"


class NormStatus(str, Enum):
    """Behaviour of a norm estimate on the grid."""

    STABLE = "stable"
    UNBOUNDED_AT_GRID = "unbounded_at_grid"
    UNSETTLED = "unsettled"


class SeriesVerdict(str, Enum):
    """Finiteness verdict for a truncated positive series."""

    FINITE = "finite"
    DIVERGENT = "divergent"
    UNDETERMINED = "undetermined"


class OperatorForm(str, Enum):
    """Representation used to evaluate H_mu(f)."""

    COEFF = "coeff"
    INTEGRAL = "integral"
    CONTOUR = "contour"


class GridConfig(BaseModel):
    """Discretisation of every sup over 0 < r < 1 and every limit r -> 1."""

    model_config = ConfigDict(frozen=True)

    J: int = Field(default_factory=lambda: settings.grid_level, ge=4)
    angular_nodes: int = Field(default_factory=lambda: settings.angular_nodes, ge=64)
    truncation: int = Field(default_factory=lambda: settings.truncation, ge=1)
    rel_tol: float = Field(default_factory=lambda: settings.rel_tol, gt=0.0, le=1e-3)
    max_doublings: int = Field(default_factory=lambda: settings.max_doublings, ge=1, le=24)

    @field_validator("angular_nodes")
    @classmethod
    def _even_nodes(cls, value: int) -> int:
        if value % 2:
            raise ValueError("angular_nodes must be even")
        return value

    @classmethod
    def from_settings(cls, **overrides) -> "GridConfig":
        """Default grid from the settings, with explicit overrides applied on top."""
        return cls(**{key: value for key, value in overrides.items() if value is not None})

    @classmethod
    def parse(cls, text: str | None) -> "GridConfig":
        """Grid from a ``J=..,nodes=..,N=..,tol=..`` descriptor on top of the settings.

        Raises:
            DescriptorError: on malformed descriptors or out-of-range values.
        """
        if not text:
            return cls.from_settings()
        overrides = descriptors.parse_grid(text)
        try:
            return cls.from_settings(**overrides)
        except ValidationError as exc:
            error = exc.errors()[0]
            message = error["msg"].removeprefix("Value error, ")
            raise DescriptorError(f"{error['loc'][0]}: {message}", text, 0) from None

    @property
    def levels(self) -> np.ndarray:
        """Dyadic levels j = 0..J; level 0 is the centre of the disk."""
        return np.arange(0, self.J + 1)

    @property
    def radii(self) -> np.ndarray:
        """Radial grid r_j = 1 - 2^-j, j = 0..J."""
        return 1.0 - np.ldexp(1.0, -self.levels)

    @property
    def gaps(self) -> np.ndarray:
        """Distances 1 - r_j to the boundary, exact in floating point."""
        return np.ldexp(1.0, -self.levels)


class CircleMeanSpec(BaseModel):
    """Exponent and starting node count for an integral mean M_p(r, f)."""

    model_config = ConfigDict(frozen=True)

    p: float = Field(gt=0.0)
    nodes: int = Field(default=64, ge=16)

    @field_validator("nodes")
    @classmethod
    def _even_nodes(cls, value: int) -> int:
        if value % 2:
            raise ValueError("nodes must be even")
        return value

    @property
    def is_sup(self) -> bool:
        return math.isinf(self.p)


class NormResult(BaseModel):
    """Grid estimate of a function-space norm."""

    space: str
    value: float
    attained_at: float | None = None
    converged: bool
    status: NormStatus = NormStatus.STABLE
    trace: list[float] = Field(default_factory=list)
    error_estimate: float | None = None


class CarlesonResult(BaseModel):
    """Grid supremum of a Carleson-type ratio with its trend verdict."""

    value: float
    verdict: TrendStatus
    attained_at: float | None = None
    trace: list[float] = Field(default_factory=list)
    converged: bool = True


class EllQResult(BaseModel):
    """Moment criterion sum with its tail estimate."""

    value: float
    partial_sum: float
    tail_estimate: float
    decay_exponent: float
    block_growth: float
    cutoff: int
    verdict: SeriesVerdict


class BlockComparison(BaseModel):
    """Both sides of the dyadic-block equivalence."""

    lhs: float
    rhs: float

    @computed_field
    @property
    def ratio(self) -> float | None:
        if self.rhs == 0.0:
            return None
        return self.lhs / self.rhs


class ComplexValue(BaseModel):
    """JSON-friendly complex scalar."""

    real: float
    imag: float

    @classmethod
    def of(cls, value: complex) -> "ComplexValue":
        value = complex(value)
        return cls(real=value.real, imag=value.imag)


class ApplyResult(BaseModel):
    """Value of H_mu(f) or one of its derivatives at a point."""

    value: ComplexValue
    form: OperatorForm
    derivative: int
    error_bound: float | None


class Target(BaseModel):
    """A value a verification experiment is checked against."""

    name: str
    value: float
    provenance: Provenance
    tolerance: float | None = None


class Computed(BaseModel):
    """A value computed by a verification experiment."""

    name: str
    value: float | None
    trace: list[float] = Field(default_factory=list)
    converged: bool = True


class Verdict(BaseModel):
    """Result of one check inside an experiment."""

    name: str
    status: VerdictStatus
    detail: str | None = None


class Report(BaseModel):
    """Structured outcome of a verification experiment."""

    id: str
    targets: list[Target] = Field(default_factory=list)
    computed: list[Computed] = Field(default_factory=list)
    verdicts: list[Verdict] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    wall_time_s: float = 0.0

    @computed_field
    @property
    def passed(self) -> bool:
        """True iff every verdict passed and every computed value converged."""
        return all(v.status is VerdictStatus.PASS for v in self.verdicts) and all(
            c.converged for c in self.computed
        )
