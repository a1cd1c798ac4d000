"""Truncated Taylor series on the unit disk."""

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from loguru import logger
from numpy.polynomial import polynomial as P
from scipy.special import betainc, factorial, poch

from hilbertlab import descriptors
from hilbertlab.errors import QuadratureError, TruncationError
from hilbertlab.models import CircleMeanSpec

MAX_NODES = 1 << 22
RESOLUTION_FLOOR = 1e-3  # r^(N+1) above this leaves the dropped tail comparable to the sum


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """Coefficients a_0..a_N of ``sum a_n z^n``.

    ``truncated`` marks a finite section of an infinite series; ``sup_bound`` then
    bounds every coefficient of the full series, which is what the tail estimates use.
    Polynomials (``truncated=False``) are exact and can be evaluated anywhere.
    """

    coeffs: np.ndarray
    sup_bound: float | None = None
    truncated: bool = False
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.complex128, ndmin=1)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must be a non-empty one-dimensional sequence")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        if self.sup_bound is not None:
            if self.sup_bound < 0.0 or not math.isfinite(self.sup_bound):
                raise ValueError("sup_bound must be a finite nonnegative number")
            largest = float(np.max(np.abs(coeffs)))
            if largest > self.sup_bound * (1.0 + 1e-12) + 1e-300:
                raise ValueError(
                    f"coefficient of modulus {largest:.6g} exceeds sup_bound {self.sup_bound:.6g}"
                )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def polynomial(cls, coeffs, label: str = "") -> "TaylorSeries":
        coeffs = np.array(coeffs, dtype=np.complex128, ndmin=1)
        return cls(coeffs, sup_bound=float(np.max(np.abs(coeffs))), label=label)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def nonzero(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        """Horner evaluation of the stored coefficients.

        Raises:
            TruncationError: for a truncated series at ``|z| >= 1``.
        """
        z = np.asarray(z)
        if self.truncated and np.any(np.abs(z) >= 1.0):
            raise TruncationError(
                f"truncated series of degree {self.degree} cannot be evaluated at |z| >= 1"
            )
        value = P.polyval(z, self.coeffs)
        return complex(value) if np.ndim(value) == 0 else value

    def tail_bound(self, r: float, order: int = 0) -> float:
        """Bound on ``|sum_{n>N} (d/dz)^order a_n z^n|`` for ``|z| <= r``."""
        if not self.truncated:
            return 0.0
        if self.sup_bound is None or r >= 1.0:
            return math.inf
        if r <= 0.0:
            return 0.0
        n = self.degree
        k = order
        scale = self.sup_bound * float(factorial(k, exact=True)) / (1.0 - r) ** (k + 1)
        if k > n:
            return scale
        # sum_{n>N} C(n,k) r^(n-k) (1-r)^(k+1) is a negative binomial tail.
        return scale * float(betainc(n + 1 - k, k + 1, r))

    def differentiate(self, order: int = 1) -> "TaylorSeries":
        """k-th derivative; a series of degree below ``order`` maps to the zero series."""
        if order < 0:
            raise ValueError("order must be nonnegative")
        if order == 0:
            return self
        if order > self.degree:
            return TaylorSeries(np.zeros(1), sup_bound=0.0 if not self.truncated else None,
                                truncated=self.truncated)
        n = np.arange(self.degree + 1 - order)
        coeffs = self.coeffs[order:] * poch(n + 1.0, order)
        return self._derived(coeffs, bounded=False)

    def fractional_derivative(self, t: float) -> "TaylorSeries":
        """``D^t f = sum (n+1)^t a_n z^n``."""
        if t == 0.0:
            return self
        n = np.arange(self.degree + 1, dtype=float)
        return self._derived(self.coeffs * (n + 1.0) ** t, bounded=t < 0.0)

    def _derived(self, coeffs: np.ndarray, *, bounded: bool) -> "TaylorSeries":
        if not self.truncated:
            return TaylorSeries.polynomial(coeffs)
        return TaylorSeries(coeffs, sup_bound=self.sup_bound if bounded else None, truncated=True)

    def __add__(self, other: "TaylorSeries") -> "TaylorSeries":
        size = max(self.coeffs.size, other.coeffs.size)
        coeffs = np.zeros(size, dtype=np.complex128)
        coeffs[: self.coeffs.size] += self.coeffs
        coeffs[: other.coeffs.size] += other.coeffs
        if not (self.truncated or other.truncated):
            return TaylorSeries.polynomial(coeffs)
        bound = None
        if self.sup_bound is not None and other.sup_bound is not None:
            bound = self.sup_bound + other.sup_bound
        return TaylorSeries(coeffs, sup_bound=bound, truncated=True)

    def __mul__(self, scalar: complex) -> "TaylorSeries":
        scalar = complex(scalar)
        bound = None if self.sup_bound is None else self.sup_bound * abs(scalar)
        return TaylorSeries(self.coeffs * scalar, sup_bound=bound, truncated=self.truncated,
                            label=self.label)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        name = self.label or "TaylorSeries"
        return f"<{name} degree={self.degree} truncated={self.truncated}>"


def eval(f: TaylorSeries, z):
    return f.eval(z)


def differentiate(f: TaylorSeries, order: int) -> TaylorSeries:
    return f.differentiate(order)


def fractional_derivative(f: TaylorSeries, t: float) -> TaylorSeries:
    return f.fractional_derivative(t)


def resolved_radius(f: TaylorSeries) -> float:
    """Largest radius at which a truncated series stands in for the full one.

    Beyond it ``r^(N+1)`` exceeds ``RESOLUTION_FLOOR`` and circle means of the section,
    above all of its derivatives, stop tracking those of the full series.
    """
    if not f.truncated:
        return 1.0
    return RESOLUTION_FLOOR ** (1.0 / (f.degree + 1))


def circle_values(coeffs: np.ndarray, r: float, nodes: int) -> np.ndarray:
    """Values of ``sum a_n (r e^{i theta})^n`` at ``nodes`` equispaced angles."""
    b = coeffs * np.power(r, np.arange(coeffs.size, dtype=float))
    folded = np.zeros(nodes, dtype=np.complex128)
    for start in range(0, b.size, nodes):
        piece = b[start : start + nodes]
        folded[: piece.size] += piece
    return np.fft.ifft(folded) * nodes


def integral_mean(
    f: TaylorSeries,
    r: float,
    spec: CircleMeanSpec,
    *,
    rel_tol: float = 1e-9,
    max_doublings: int = 14,
) -> float:
    """Integral mean ``M_p(r, f)`` by trapezoid sums with node doubling.

    The first node count is the larger of ``spec.nodes`` and the smallest power of two
    above the number of coefficients. ``p = 2`` is evaluated exactly by Parseval's
    identity. For ``p = inf`` the result is the maximum over the finest angular grid,
    which can only under-estimate the true supremum. Radii past ``resolved_radius(f)``
    are computed all the same, with a warning.

    Raises:
        TruncationError: outside the disk for truncated series.
        QuadratureError: when node doubling does not settle.
    """
    if not 0.0 <= r < 1.0:
        raise TruncationError(f"integral means need 0 <= r < 1, got {r}")
    limit = resolved_radius(f)
    if r > limit:
        logger.warning(
            "Integral mean beyond the truncation's resolution",
            r=r, degree=f.degree, resolved_radius=limit,
        )
    coeffs = f.coeffs
    if r == 0.0 or f.degree == 0:
        return float(abs(coeffs[0]))
    if spec.p == 2.0:
        weights = np.power(r, 2.0 * np.arange(coeffs.size))
        return float(math.sqrt(np.sum(np.abs(coeffs) ** 2 * weights)))

    reduce = _mean_reducer(spec.p)
    nodes = max(spec.nodes, 1 << math.ceil(math.log2(coeffs.size + 1)))
    current = reduce(circle_values(coeffs, r, nodes))
    previous = math.nan
    for _ in range(max_doublings):
        nodes *= 2
        if nodes > MAX_NODES:
            break
        previous, current = current, reduce(circle_values(coeffs, r, nodes))
        if abs(current - previous) <= max(rel_tol * current, 1e-12):
            return current

    logger.warning("Integral mean did not converge", p=spec.p, r=r, nodes=nodes)
    raise QuadratureError(f"M_{spec.p}(r={r}) did not converge", previous, current)


def _mean_reducer(p: float) -> Callable[[np.ndarray], float]:
    if math.isinf(p):
        return lambda values: float(np.max(np.abs(values)))
    return lambda values: float(np.mean(np.abs(values) ** p) ** (1.0 / p))


# Test-function factory for the CLI and the HTTP surface.


def _const(d: descriptors.Descriptor) -> TaylorSeries:
    (item,) = _exactly(d, 1)
    return TaylorSeries.polynomial([descriptors.as_complex(d, item)], label=d.text)


def _poly(d: descriptors.Descriptor) -> TaylorSeries:
    items = d.single_group()
    if not items:
        raise d.fail("expected at least one coefficient")
    coeffs = [descriptors.as_complex(d, item) for item in items]
    return TaylorSeries.polynomial(coeffs, label=d.text)


def _monomial(d: descriptors.Descriptor) -> TaylorSeries:
    k = descriptors.as_int(d, d.keyed(d.single_group(), required=("k",))["k"], minimum=0)
    coeffs = np.zeros(k + 1)
    coeffs[k] = 1.0
    return TaylorSeries.polynomial(coeffs, label=d.text)


def _geom(d: descriptors.Descriptor) -> TaylorSeries:
    n = descriptors.as_int(d, d.keyed(d.single_group(), required=("N",))["N"], minimum=0)
    return TaylorSeries(np.ones(n + 1), sup_bound=1.0, truncated=True, label=d.text)


def _hlog(d: descriptors.Descriptor) -> TaylorSeries:
    n = descriptors.as_int(d, d.keyed(d.single_group(), required=("N",))["N"], minimum=0)
    return hlog(n, label=d.text)


def _exactly(d: descriptors.Descriptor, count: int) -> tuple[descriptors.Item, ...]:
    items = d.single_group()
    if len(items) != count:
        raise d.fail(f"expected {count} value(s), got {len(items)}")
    return items


FUNCTION_BUILDERS: dict[str, Callable[[descriptors.Descriptor], TaylorSeries]] = {
    "const": _const,
    "poly": _poly,
    "monomial": _monomial,
    "geom": _geom,
    "hlog": _hlog,
}


def hlog(n: int, label: str = "") -> TaylorSeries:
    """Section of ``sum z^n / (n+1) = log(1/(1-z)) / z``, the image of 1 under H."""
    return TaylorSeries(
        1.0 / np.arange(1, n + 2, dtype=float), sup_bound=1.0, truncated=True,
        label=label or f"hlog:N={n}",
    )


def make_function(text: str) -> TaylorSeries:
    """Build a test function from its descriptor.

    Raises:
        DescriptorError: on unknown names or malformed arguments.
    """
    d = descriptors.parse(text)
    builder = FUNCTION_BUILDERS.get(d.name)
    if builder is None:
        names = sorted(FUNCTION_BUILDERS)
        raise d.fail(f"unknown function {d.name!r} (expected one of {names})", 0)
    if not d.groups:
        raise d.fail(f"{d.name!r} needs arguments", len(d.text))
    return builder(d)
