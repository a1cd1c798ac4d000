"""Circle means of the kernels ``|1 - z e^{-i theta}|^-(1+c)`` and their sharp constants."""

import math

import numpy as np
from scipy.special import gamma

from hilbertlab.quadrature import circle_mean_graded, integrate_graded


def kernel_mean_Ic(z, c: float, *, gap=None, rel_tol: float = 1e-10):  # noqa: N802
    """``I_c(z) = (1/2pi) int |1 - z e^{-i theta}|^-(1+c) dtheta``.

    Depends on ``|z|`` only. ``gap`` may carry ``1 - |z|`` when the caller knows it more
    accurately than ``1 - abs(z)``. Accepts scalars or arrays.

    Raises:
        QuadratureError: when the graded circle rule does not settle.
    """
    r = np.atleast_1d(np.abs(np.asarray(z, dtype=np.complex128)))
    if np.any(r >= 1.0):
        raise ValueError("kernel means need |z| < 1")
    gap = 1.0 - r if gap is None else np.atleast_1d(np.asarray(gap, dtype=float))
    exponent = 0.5 * (1.0 + c)

    def integrand(theta):
        s = np.sin(0.5 * theta) ** 2
        return (gap[None, :] ** 2 + 4.0 * np.multiply.outer(s, r)) ** -exponent

    value = circle_mean_graded(integrand, scale=float(np.min(gap)), rel_tol=rel_tol).value
    value = np.asarray(value, dtype=float)
    return float(value[0]) if np.ndim(z) == 0 else value.reshape(np.shape(z))


def sharp_constant(c: float) -> float:
    """Limit of the normalised kernel mean as ``|z| -> 1``.

    ``Gamma(c) / Gamma((1+c)/2)^2`` for c > 0 and ``Gamma(-c) / Gamma((1-c)/2)^2`` for
    c < 0. The logarithmic case c = 0 has the bracket ``[1/pi, 1]`` instead.
    """
    if c > 0.0:
        return float(gamma(c) / gamma(0.5 * (1.0 + c)) ** 2)
    if c < 0.0:
        return float(gamma(-c) / gamma(0.5 * (1.0 - c)) ** 2)
    raise ValueError("c = 0 has no single sharp constant; see kernel_mean_bounds")


def kernel_mean_bounds(c: float) -> tuple[float, float]:
    """Sharp two-sided bounds for ``normalized_kernel_mean(r, c)``."""
    if c == 0.0:
        return 1.0 / math.pi, 1.0
    return 1.0, sharp_constant(c)


def normalized_kernel_mean(gap, c: float, *, rel_tol: float = 1e-10):
    """Kernel mean scaled so that it stays between the sharp bounds.

    With ``r = 1 - gap``: ``(1 - r^2)^c I_c(r)`` for c > 0, ``I_c(r)`` for c < 0 and
    ``r^2 log(1/(1 - r^2))^-1 I_0(r)`` for c = 0 (value 1 at r = 0).
    """
    gap = np.atleast_1d(np.asarray(gap, dtype=float))
    r = 1.0 - gap
    values = kernel_mean_Ic(r, c, gap=gap, rel_tol=rel_tol)
    one_minus_r2 = gap * (2.0 - gap)
    if c > 0.0:
        values = one_minus_r2**c * values
    elif c == 0.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            factor = np.where(r > 0.0, r**2 / -np.log(one_minus_r2), 1.0)
        values = factor * values
    return values


def disk_kernel_integral(gap: float, *, rel_tol: float = 1e-8) -> float:
    """``int_D 2 (1 - r^2) |w| / |1 - r conj(w)|^3 dA(w)`` with ``r = 1 - gap``.

    ``dA`` is normalised area (``A(D) = 1``), so in polar coordinates the integral is
    ``(1 - r^2) int_0^1 4 rho^2 I_2(r rho) drho``. Its value at r = 0 is 4/3 and its
    supremum over the disk is 8/pi.
    """
    r = 1.0 - gap

    def integrand(rho, u):
        return 4.0 * rho**2 * kernel_mean_Ic(r * rho, 2.0, gap=gap + r * u, rel_tol=rel_tol)

    value = integrate_graded(integrand, scale=max(gap, 1e-300), rel_tol=rel_tol).value
    return float(gap * (2.0 - gap) * value)
