"""Base class for finite positive measures on [0, 1)."""

from abc import ABC, abstractmethod
from collections.abc import Callable

import numpy as np

from hilbertlab.quadrature import RadialIntegrand

DEFAULT_REL_TOL = 1e-12


class RadialMeasure(ABC):
    """A finite positive Borel measure on [0, 1).

    Subclasses are frozen dataclasses. Every integral against the measure goes through
    ``quad``, whose integrands take the node positions ``t`` and their distances
    ``u = 1 - t`` to the boundary.
    """

    @property
    @abstractmethod
    def total_mass(self) -> float: ...

    @property
    @abstractmethod
    def descriptor(self) -> str:
        """Canonical mini-language form of the measure."""

    @abstractmethod
    def moment(self, n: int) -> float:
        """``mu_n = int t^n dmu``."""

    def moments(self, count: int) -> np.ndarray:
        """``mu_0 .. mu_{count-1}``."""
        return np.array([self.moment(n) for n in range(count)])

    @abstractmethod
    def tail(self, t: float) -> float:
        """``mu([t, 1))``."""

    def tail_at_gap(self, u: float) -> float:
        """``mu([1 - u, 1))``; families override this to avoid forming ``1 - u``."""
        return self.tail(1.0 - u)

    @abstractmethod
    def moment_tail_sum(self, m: int) -> float:
        """``int t^m / (1 - t) dmu = sum_{i >= m} mu_i``; infinite when not integrable."""

    @abstractmethod
    def quad(
        self,
        integrand: RadialIntegrand,
        *,
        endpoint_power: float = 0.0,
        scale: float | None = None,
        rel_tol: float = DEFAULT_REL_TOL,
    ):
        """``int (1 - t)^p g(t, u) dmu(t)`` for a possibly vector-valued ``g``.

        Raises:
            QuadratureError: if the graded rule does not converge.
        """

    def integrate(
        self,
        g: Callable[[np.ndarray], np.ndarray],
        *,
        scale: float | None = None,
        rel_tol: float = DEFAULT_REL_TOL,
    ):
        """``int g(t) dmu(t)``."""
        return self.quad(lambda t, u: g(t), scale=scale, rel_tol=rel_tol)

    def __str__(self) -> str:
        return self.descriptor


def scale_rows(values, factor: np.ndarray) -> np.ndarray:
    """Multiply each node's row of a (possibly vector-valued) integrand by ``factor``."""
    values = np.asarray(values)
    if values.ndim == 0:
        return factor * values
    return values * factor.reshape((-1,) + (1,) * (values.ndim - 1))
