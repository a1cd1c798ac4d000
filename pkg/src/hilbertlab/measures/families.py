"""Concrete measure families: Lebesgue, power weights, atoms and densities."""

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from cachetools import cached
from cachetools.keys import hashkey
from loguru import logger
from scipy.special import beta, betaln

from hilbertlab.cache import moment_cache
from hilbertlab.errors import MeasureError, QuadratureError
from hilbertlab.measures.base import DEFAULT_REL_TOL, RadialMeasure, scale_rows
from hilbertlab.quadrature import RadialIntegrand, integrate_graded

MOMENT_BLOCK = 4096


def _check_exponent(total: float) -> None:
    if total <= -1.0:
        raise QuadratureError("integrand is not integrable at t = 1", math.inf, math.inf)


@dataclass(frozen=True)
class Lebesgue(RadialMeasure):
    """``dmu = dt``; tail ``1 - t``."""

    @property
    def total_mass(self) -> float:
        return 1.0

    @property
    def descriptor(self) -> str:
        return "lebesgue"

    def moment(self, n: int) -> float:
        return 1.0 / (n + 1)

    def moments(self, count: int) -> np.ndarray:
        return 1.0 / np.arange(1, count + 1, dtype=float)

    def tail(self, t: float) -> float:
        return 1.0 - t

    def tail_at_gap(self, u: float) -> float:
        return u

    def moment_tail_sum(self, m: int) -> float:
        return math.inf

    def quad(
        self,
        integrand: RadialIntegrand,
        *,
        endpoint_power: float = 0.0,
        scale: float | None = None,
        rel_tol: float = DEFAULT_REL_TOL,
    ):
        _check_exponent(endpoint_power)
        return integrate_graded(
            integrand, endpoint_power=endpoint_power, scale=scale, rel_tol=rel_tol
        ).value


@dataclass(frozen=True)
class PowerWeight(RadialMeasure):
    """``dmu = alpha (1 - t)^(alpha - 1) dt``; unit mass, tail ``(1 - t)^alpha``."""

    alpha: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise MeasureError(f"power weight needs a finite alpha > 0, got {self.alpha}")

    @property
    def total_mass(self) -> float:
        return 1.0

    @property
    def descriptor(self) -> str:
        return f"power:alpha={self.alpha:g}"

    def moment(self, n: int) -> float:
        return float(self.moments(n + 1)[n])

    def moments(self, count: int) -> np.ndarray:
        n = np.arange(count, dtype=float)
        return self.alpha * np.exp(betaln(n + 1.0, self.alpha))

    def tail(self, t: float) -> float:
        return self.tail_at_gap(1.0 - t)

    def tail_at_gap(self, u: float) -> float:
        return u**self.alpha

    def moment_tail_sum(self, m: int) -> float:
        if self.alpha <= 1.0:
            return math.inf
        return float(self.alpha * beta(m + 1.0, self.alpha - 1.0))

    def quad(
        self,
        integrand: RadialIntegrand,
        *,
        endpoint_power: float = 0.0,
        scale: float | None = None,
        rel_tol: float = DEFAULT_REL_TOL,
    ):
        power = self.alpha - 1.0 + endpoint_power
        _check_exponent(power)
        result = integrate_graded(integrand, endpoint_power=power, scale=scale, rel_tol=rel_tol)
        return self.alpha * result.value


@dataclass(frozen=True)
class Atomic(RadialMeasure):
    """Finite sum of point masses ``w_j delta_{t_j}`` with ``0 <= t_j < 1``."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        atoms = tuple((float(t), float(w)) for t, w in self.atoms)
        if not atoms:
            raise MeasureError("atomic measure needs at least one atom")
        for t, w in atoms:
            if not 0.0 <= t < 1.0:
                raise MeasureError(f"atom position must lie in [0, 1), got {t}")
            if not (w > 0.0 and math.isfinite(w)):
                raise MeasureError(f"atom weight must be finite and positive, got {w}")
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))

    @property
    def positions(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def descriptor(self) -> str:
        return "atomic:" + ";".join(f"t={t:g},w={w:g}" for t, w in self.atoms)

    def moment(self, n: int) -> float:
        return float(np.sum(self.weights * self.positions**n))

    def moments(self, count: int) -> np.ndarray:
        n = np.arange(count, dtype=float)
        return self.weights @ np.power.outer(self.positions, n)

    def tail(self, t: float) -> float:
        return float(np.sum(self.weights[self.positions >= t]))

    def moment_tail_sum(self, m: int) -> float:
        t = self.positions
        return float(np.sum(self.weights * t**m / (1.0 - t)))

    def quad(
        self,
        integrand: RadialIntegrand,
        *,
        endpoint_power: float = 0.0,
        scale: float | None = None,
        rel_tol: float = DEFAULT_REL_TOL,
    ):
        t = self.positions
        u = 1.0 - t
        w = self.weights * u**endpoint_power if endpoint_power else self.weights
        value = np.tensordot(w, scale_rows(integrand(t, u), np.ones_like(t)), axes=(0, 0))
        return value.item() if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class Density(RadialMeasure):
    """``dmu = weight(t) dt`` with ``weight(t) ~ (1 - t)^e`` at the boundary.

    ``endpoint_exponent`` is ``e``; the last graded cell integrates ``(1 - t)^e`` exactly
    and only ``weight(t) / (1 - t)^e`` is sampled there.
    """

    weight: Callable[[np.ndarray], np.ndarray]
    endpoint_exponent: float = 0.0
    name: str = "density"
    mass: float = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.endpoint_exponent > -1.0:
            raise MeasureError(
                f"density exponent must exceed -1, got {self.endpoint_exponent}"
            )
        mass = float(np.real(self.quad(lambda t, u: np.ones_like(t))))
        if not (mass > 0.0 and math.isfinite(mass)):
            raise MeasureError(f"density must have finite positive mass, got {mass}")
        object.__setattr__(self, "mass", mass)

    @property
    def total_mass(self) -> float:
        return self.mass

    @property
    def descriptor(self) -> str:
        return self.name

    def moment(self, n: int) -> float:
        return _density_moment(self, n)

    def moments(self, count: int) -> np.ndarray:
        blocks = []
        for start in range(0, count, MOMENT_BLOCK):
            n = np.arange(start, min(count, start + MOMENT_BLOCK), dtype=float)
            blocks.append(
                self.quad(lambda t, u, n=n: np.power.outer(t, n), scale=1.0 / (n[-1] + 1.0))
            )
        logger.debug("Density moments computed", measure=self.name, count=count)
        return np.concatenate(blocks)

    def tail(self, t: float) -> float:
        return self.tail_at_gap(1.0 - t)

    def tail_at_gap(self, u: float) -> float:
        if u <= 0.0:
            return 0.0
        e = self.endpoint_exponent
        return integrate_graded(
            lambda t, v: self.weight(t) / v**e,
            endpoint_power=e,
            span=min(u, 1.0),
            rel_tol=DEFAULT_REL_TOL,
        ).value

    def moment_tail_sum(self, m: int) -> float:
        if self.endpoint_exponent <= 0.0:
            return math.inf
        return float(self.quad(lambda t, u: t**m, endpoint_power=-1.0, scale=1.0 / (m + 1.0)))

    def quad(
        self,
        integrand: RadialIntegrand,
        *,
        endpoint_power: float = 0.0,
        scale: float | None = None,
        rel_tol: float = DEFAULT_REL_TOL,
    ):
        e = self.endpoint_exponent
        _check_exponent(e + endpoint_power)
        return integrate_graded(
            lambda t, u: scale_rows(integrand(t, u), self.weight(t) / u**e),
            endpoint_power=e + endpoint_power,
            scale=scale,
            rel_tol=rel_tol,
        ).value


@cached(moment_cache, key=lambda measure, n: hashkey(measure, n))
def _density_moment(measure: Density, n: int) -> float:
    return float(measure.quad(lambda t, u: t**n, scale=1.0 / (n + 1.0)))
