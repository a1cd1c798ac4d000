"""The generalized Hilbert operator H_mu and the Cesaro operator.

H_mu acts on Taylor coefficients through the Hankel matrix of moments,
``b_n = sum_k mu_{n+k} a_k``, and, for Carleson measures, agrees with the integral
form ``I_mu(f)(z) = int f(t) / (1 - t z) dmu(t)``.
"""

import math

import numpy as np
from loguru import logger
from scipy.signal import fftconvolve

from hilbertlab.analytic import TaylorSeries
from hilbertlab.config import settings
from hilbertlab.errors import TruncationError
from hilbertlab.measures import Lebesgue, RadialMeasure
from hilbertlab.models import OperatorForm
from hilbertlab.quadrature import circle_mean_graded, integrate_graded

DIRECT_SUM_LIMIT = 64  # nonzero input coefficients handled by shifted sums instead of FFT


class HilbertOperator:
    """H_mu for one measure, with a lazily extended moment table.

    The table is replaced wholesale when it grows, so concurrent readers see either the
    old or the new array, never a partially written one.
    """

    def __init__(
        self,
        measure: RadialMeasure,
        *,
        max_degree: int | None = None,
        tail_tol: float | None = None,
    ) -> None:
        self.measure = measure
        self.max_degree = settings.truncation if max_degree is None else max_degree
        self.tail_tol = settings.tail_tol if tail_tol is None else tail_tol
        self._moments = np.empty(0)

    def __repr__(self) -> str:
        return f"HilbertOperator({self.measure.descriptor})"

    def moments(self, count: int) -> np.ndarray:
        """``mu_0 .. mu_{count-1}``, extending the table on demand."""
        table = self._moments
        if table.size < count:
            size = max(count, 2 * table.size)
            table = np.asarray(self.measure.moments(size), dtype=float)
            table.setflags(write=False)
            self._moments = table
            logger.debug("Moment table extended", measure=self.measure.descriptor, size=size)
        return table[:count]

    def coefficient_tail(self, f: TaylorSeries) -> float:
        """Bound on the coefficients dropped by cutting the inner sums at deg f."""
        if not f.truncated:
            return 0.0
        if f.sup_bound is None:
            return math.inf
        return f.sup_bound * self.measure.moment_tail_sum(f.degree + 1)

    def coeff_action(self, f: TaylorSeries, out_degree: int | None = None) -> TaylorSeries:
        """Coefficients ``b_0 .. b_{out_degree}`` of ``H_mu(f)``.

        Raises:
            TruncationError: when ``f`` is a truncated series and the neglected part of the
                inner sums cannot be bounded below the tail tolerance.
        """
        out_degree = self.max_degree if out_degree is None else out_degree
        tail = self.coefficient_tail(f)
        if tail > self.tail_tol:
            raise TruncationError(
                f"coefficient action of {f!r} under {self.measure.descriptor} is not "
                f"controlled at truncation (tail bound {tail:.3g})"
            )

        a = f.coeffs
        k_max = f.degree
        mu = self.moments(out_degree + k_max + 1)
        support = np.flatnonzero(a)
        if support.size <= DIRECT_SUM_LIMIT:
            b = np.zeros(out_degree + 1, dtype=np.complex128)
            for k in support:
                b += a[k] * mu[k : k + out_degree + 1]
        else:
            b = fftconvolve(mu, a[::-1])[k_max : k_max + out_degree + 1]

        bound = self.measure.total_mass * float(np.sum(np.abs(a)))
        return TaylorSeries(b, sup_bound=max(bound, float(np.max(np.abs(b)))), truncated=True,
                            label=f"H[{self.measure.descriptor}]({f.label or 'f'})")

    def degree_for(self, f: TaylorSeries, r: float, order: int = 0) -> int:
        """Smallest output degree whose tail at radius r falls below the tail tolerance."""
        bound = self.measure.total_mass * float(np.sum(np.abs(f.coeffs)))
        if r <= 0.0 or bound == 0.0:
            return order
        n = order + 1
        while n < self.max_degree:
            section = TaylorSeries(np.zeros(n + 1), sup_bound=bound, truncated=True)
            if section.tail_bound(r, order) < self.tail_tol:
                return n
            n *= 2
        return self.max_degree

    def integral_action(self, f: TaylorSeries, z, *, rel_tol: float = 1e-12):
        """``I_mu(f)(z) = int f(t) / (1 - t z) dmu(t)``."""
        return self.kernel_integral(f, z, 0, rel_tol=rel_tol)

    def kernel_derivative(self, f: TaylorSeries, z, order: int, *, rel_tol: float = 1e-12):
        """Derivative of order 1 or 2 of ``I_mu(f)`` at ``z``.

        Order 1 is ``int t f(t) / (1 - t z)^2 dmu``; order 2 is
        ``int 2 t^2 f(t) / (1 - t z)^3 dmu``.
        """
        if order not in (1, 2):
            raise ValueError(f"kernel derivative order must be 1 or 2, got {order}")
        return self.kernel_integral(f, z, order, rel_tol=rel_tol)

    def kernel_integral(self, f: TaylorSeries, z, order: int, *, rel_tol: float = 1e-12):
        """``order! int t^order f(t) / (1 - t z)^(order+1) dmu`` for scalar or array ``z``."""
        z = np.asarray(z, dtype=np.complex128)
        if np.any(np.abs(z) >= 1.0):
            raise TruncationError("the integral form needs |z| < 1")
        one_minus_z = 1.0 - z
        const = float(math.factorial(order))
        shape = z.shape

        def integrand(t, u):
            ft = f.eval(t) * (const * t**order)
            denom = one_minus_z[None, ...] + np.multiply.outer(u, z)
            return ft.reshape((-1,) + (1,) * len(shape)) / denom ** (order + 1)

        scale = min(float(np.min(np.abs(one_minus_z))), 1.0 / (f.degree + 1))
        value = self.measure.quad(integrand, scale=scale, rel_tol=rel_tol)
        return complex(value) if not shape else np.asarray(value)

    def derivative_mean(
        self, f: TaylorSeries, gap: float, order: int, *, rel_tol: float = 1e-9
    ) -> float:
        """``M_1(r, H_mu(f)^(order))`` at ``r = 1 - gap`` from the integral form.

        The kernels peak at ``theta = 0``, so the circle mean uses the graded rule.
        """
        r = 1.0 - gap

        def integrand(theta):
            z = r * np.exp(1j * theta)
            return np.abs(self.kernel_integral(f, z, order, rel_tol=0.01 * rel_tol))

        return float(circle_mean_graded(integrand, scale=gap, rel_tol=rel_tol).value)

    def apply(
        self,
        f: TaylorSeries,
        z: complex,
        *,
        derivative: int = 0,
        form: OperatorForm = OperatorForm.COEFF,
    ) -> tuple[complex, float | None]:
        """Value of ``H_mu(f)^(derivative)(z)`` with an error bound where one is known."""
        if derivative not in (0, 1, 2):
            raise ValueError(f"derivative must be 0, 1 or 2, got {derivative}")
        if form is OperatorForm.CONTOUR:
            if not isinstance(self.measure, Lebesgue) or derivative != 1:
                raise ValueError("the contour form is defined for Lebesgue measure, derivative 1")
            return contour_form_derivative(f, z), None
        if form is OperatorForm.INTEGRAL:
            return self.kernel_integral(f, z, derivative), None

        r = abs(z)
        if r >= 1.0:
            raise TruncationError("H_mu(f) is a truncated series; need |z| < 1")
        image = self.coeff_action(f, self.degree_for(f, r, derivative))
        value = complex(image.differentiate(derivative).eval(z))
        error = image.tail_bound(r, derivative)
        dropped = self.coefficient_tail(f)
        if dropped:
            error += dropped * math.factorial(derivative) / (1.0 - r) ** (derivative + 1)
        return value, error


def coeff_action(op: HilbertOperator, f: TaylorSeries, out_degree: int) -> TaylorSeries:
    return op.coeff_action(f, out_degree)


def integral_action(op: HilbertOperator, f: TaylorSeries, z):
    return op.integral_action(f, z)


def kernel_derivative(op: HilbertOperator, f: TaylorSeries, z, order: int):
    return op.kernel_derivative(f, z, order)


def contour_form_derivative(f: TaylorSeries, z: complex, *, rel_tol: float = 1e-12) -> complex:
    """``H(f)'(z) = (1/(1-z)) int_0^1 psi_t(z) f(psi_t(z)) dt`` with
    ``psi_t(z) = t / (1 - (1 - t) z)``; Lebesgue measure only.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise TruncationError("the contour form needs |z| < 1")

    # The integrand varies on the scale |1 - z| next to t = 0, so the graded rule is run
    # with the roles of t and 1 - t exchanged.
    def integrand(s, t):
        psi = t / (1.0 - s * z)
        return psi * f.eval(psi)

    value = integrate_graded(integrand, scale=abs(1.0 - z), rel_tol=rel_tol).value
    return complex(value) / (1.0 - z)


def cesaro_action(f: TaylorSeries, *, at: complex | None = None, out_degree: int | None = None,
                  rel_tol: float = 1e-12):
    """Cesaro operator ``C(f)``.

    Without ``at`` returns the coefficients ``(1/(n+1)) sum_{k<=n} a_k`` up to
    ``out_degree`` (default: the degree of f). With ``at = z`` returns the integral form
    ``int_0^1 f(t z) / (1 - t z) dt``.
    """
    if at is None:
        out_degree = f.degree if out_degree is None else out_degree
        if f.truncated and out_degree > f.degree:
            raise TruncationError("Cesaro coefficients beyond the truncation of f are unknown")
        a = np.zeros(out_degree + 1, dtype=np.complex128)
        size = min(f.coeffs.size, a.size)
        a[:size] = f.coeffs[:size]
        c = np.cumsum(a) / np.arange(1, out_degree + 2)
        bound = float(np.sum(np.abs(f.coeffs))) if not f.truncated else f.sup_bound
        return TaylorSeries(c, sup_bound=bound, truncated=True,
                            label=f"C({f.label or 'f'})")

    z = complex(at)
    if abs(z) >= 1.0:
        raise TruncationError("the Cesaro integral form needs |z| < 1")

    def integrand(t, u):
        return f.eval(t * z) / ((1.0 - z) + u * z)

    scale = min(abs(1.0 - z), 1.0 / (f.degree + 1))
    return complex(integrate_graded(integrand, scale=scale, rel_tol=rel_tol).value)
