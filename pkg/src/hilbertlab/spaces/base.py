"""Space definitions and parameter validation."""

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict, model_validator

from hilbertlab.models import GridConfig, NormResult

if TYPE_CHECKING:
    from hilbertlab.analytic import TaylorSeries


class SpaceFamily(str, Enum):
    """Function spaces with a norm evaluator."""

    BLOCH = "bloch"
    ZYGMUND1 = "zygmund1"
    MEAN_LIPSCHITZ = "mean_lipschitz"
    HARDY = "hardy"
    DIRICHLET = "dirichlet"
    HARDY_LITTLEWOOD = "hl"
    BQ = "bq"


class SpaceSpec(BaseModel):
    """A space family with its parameters.

    ``mean_lipschitz`` takes ``p`` in (1, inf) and ``alpha`` in (0, 1] (default 1/p);
    ``hardy`` and ``dirichlet`` take ``q > 0``; ``hl`` takes ``q >= 1``; ``bq`` takes
    ``q`` in (0, 1).
    """

    model_config = ConfigDict(frozen=True)

    family: SpaceFamily
    p: float | None = None
    q: float | None = None
    alpha: float | None = None

    @model_validator(mode="before")
    @classmethod
    def _default_alpha(cls, data):
        if isinstance(data, dict) and data.get("family") in (
            SpaceFamily.MEAN_LIPSCHITZ,
            SpaceFamily.MEAN_LIPSCHITZ.value,
        ):
            if data.get("alpha") is None and data.get("p"):
                data = {**data, "alpha": 1.0 / float(data["p"])}
        return data

    @model_validator(mode="after")
    def _check_ranges(self) -> "SpaceSpec":
        from hilbertlab.spaces import SPACE_REGISTRY

        definition = SPACE_REGISTRY[self.family]
        given = {name for name in ("p", "q", "alpha") if getattr(self, name) is not None}
        unexpected = given - set(definition.params)
        if unexpected:
            raise ValueError(f"{self.family.value} takes no parameter {sorted(unexpected)}")
        missing = set(definition.params) - given
        if missing:
            raise ValueError(f"{self.family.value} needs {sorted(missing)}")
        definition.check(self)
        return self

    @property
    def label(self) -> str:
        params = ",".join(
            f"{name}={getattr(self, name):g}"
            for name in ("p", "q", "alpha")
            if getattr(self, name) is not None
        )
        return f"{self.family.value}:{params}" if params else self.family.value

    @property
    def is_quasi_norm(self) -> bool:
        """Hardy and Dirichlet spaces with q < 1 only carry a quasi-norm."""
        return self.family in (SpaceFamily.HARDY, SpaceFamily.DIRICHLET) and self.q < 1.0


def no_check(spec: SpaceSpec) -> None:
    return None


def check_mean_lipschitz(spec: SpaceSpec) -> None:
    if not 1.0 < spec.p < float("inf"):
        raise ValueError(f"mean_lipschitz needs 1 < p < inf, got {spec.p}")
    if not 0.0 < spec.alpha <= 1.0:
        raise ValueError(f"mean_lipschitz needs 0 < alpha <= 1, got {spec.alpha}")


def check_positive_q(spec: SpaceSpec) -> None:
    if not 0.0 < spec.q < float("inf"):
        raise ValueError(f"{spec.family.value} needs 0 < q < inf, got {spec.q}")


def check_hl(spec: SpaceSpec) -> None:
    if not 1.0 <= spec.q < float("inf"):
        raise ValueError(f"hl needs 1 <= q < inf, got {spec.q}")


def check_bq(spec: SpaceSpec) -> None:
    if not 0.0 < spec.q < 1.0:
        raise ValueError(f"bq needs 0 < q < 1, got {spec.q}")


@dataclass(frozen=True)
class SpaceDef:
    """Declarative definition of a space.

    Sup-type spaces take a supremum over the radial grid and report a trend status;
    integral-type spaces carry a quadrature error estimate.
    """

    family: SpaceFamily
    params: tuple[str, ...]
    sup_type: bool
    evaluate: Callable[["TaylorSeries", SpaceSpec, GridConfig], NormResult]
    check: Callable[[SpaceSpec], None] = no_check

