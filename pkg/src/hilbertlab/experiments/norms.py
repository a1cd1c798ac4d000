"""Norm of H on H^inf: the Zygmund-type bracket and the Bloch value 3.

The closed forms below come from the extremal test function 1, whose image
``H(1)(z) = log(1/(1-z)) / z`` has coefficients ``1/(n+1)``.
"""

import math

import numpy as np
from numpy.polynomial import polynomial as P

from hilbertlab.analytic import hlog
from hilbertlab.measures import Lebesgue
from hilbertlab.measures.carleson import running_sup
from hilbertlab.models import GridConfig, Provenance, Report
from hilbertlab.operator import HilbertOperator, cesaro_action
from hilbertlab.quadrature import integrate_graded
from hilbertlab.spaces import SpaceFamily, SpaceSpec, norm

from .base import ReportBuilder, is_increasing
from .carleson import ONE, fejer_riesz_bound, zygmund_trace

SERIES_SWITCH = 0.5  # below this radius the power series replaces the log formulas
SERIES_TERMS = 64
LOWER_BOUND = 1.5 + 2.0 / math.pi
UPPER_BOUND = 1.5 + 4.0 / math.pi
BRACKET_SLACK = 0.01
LOWER_CURVE_LEVEL = 20
ZYGMUND_OFFSET = 1.5  # |H(1)(0)| + |H(1)'(0)| = 1 + 1/2
ENVELOPE_LEVEL = 12
BLOCH_LEVELS = 24
BLOCH_LEVEL = 10
CESARO_MAX_LEVEL = 14
CESARO_OVERSAMPLING = 40
IDENTITY_LEVEL = 10
IDENTITY_TOL = 1e-9


def _radii(gaps) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    gaps = np.asarray(gaps, dtype=float)
    return gaps, 1.0 - gaps, -np.log(gaps)


def shifted_log_series(gaps) -> np.ndarray:
    """``T(r) = sum r^m / (m+3) = (log(1/(1-r)) - r - r^2/2) / r^3``."""
    gaps, r, log_term = _radii(gaps)
    series = P.polyval(r, 1.0 / np.arange(3, SERIES_TERMS + 3))
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = (log_term - r - 0.5 * r**2) / r**3
    return np.where(r < SERIES_SWITCH, series, closed)


def lower_curve(gaps) -> np.ndarray:
    """``(1 + r) F(r)`` with ``F(r) = 1 - (1-r) T(r)``; increases to 2."""
    gaps, r, _ = _radii(gaps)
    return (1.0 + r) * (1.0 - gaps * shifted_log_series(gaps))


def psi(gaps) -> np.ndarray:
    """``r^2/2 - 3r - 2r log(1/(1-r)) + 3 log(1/(1-r))``."""
    _, r, log_term = _radii(gaps)
    return 0.5 * r**2 - 3.0 * r - 2.0 * r * log_term + 3.0 * log_term


def fejer_riesz_series(gaps) -> np.ndarray:
    """``S(r) = sum (n+2)/(n+3) r^n = 1/(1-r) - T(r)``."""
    gaps = np.asarray(gaps, dtype=float)
    return 1.0 / gaps - shifted_log_series(gaps)


def odd_log_series(gaps) -> np.ndarray:
    """``V(r) = sum r^(2m) / (2m+3) = (atanh r - r) / r^3``."""
    gaps, r, log_term = _radii(gaps)
    series = P.polyval(r**2, 1.0 / np.arange(3, 2 * SERIES_TERMS + 3, 2))
    atanh = 0.5 * (np.log1p(r) + log_term)
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = (atanh - r) / r**3
    return np.where(r < SERIES_SWITCH, series, closed)


def upper_series(gaps) -> np.ndarray:
    """``U(r) = sum (n+1)/(n+3/2) r^(2n) = 1/(1-r^2) - V(r)``."""
    gaps = np.asarray(gaps, dtype=float)
    return 1.0 / (gaps * (2.0 - gaps)) - odd_log_series(gaps)


def upper_envelope(gaps) -> np.ndarray:
    """``(4/pi) (1 - r^2) U(r)``; increases to 4/pi."""
    gaps = np.asarray(gaps, dtype=float)
    return 4.0 / math.pi * (1.0 - gaps * (2.0 - gaps) * odd_log_series(gaps))


def bloch_kernel(gaps) -> np.ndarray:
    """``G(x) = (1 + x) int_0^1 (1 - s)/(1 - x s) ds = (1 + x) sum x^n / ((n+1)(n+2))``.

    The closed form is ``(1 + x) (L/x - (L - x)/x^2)`` with ``L = log(1/(1-x))``.
    """
    gaps, x, log_term = _radii(gaps)
    n = np.arange(SERIES_TERMS)
    series = P.polyval(x, 1.0 / ((n + 1.0) * (n + 2.0)))
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = log_term / x - (log_term - x) / x**2
    return (1.0 + x) * np.where(x < SERIES_SWITCH, series, closed)


def _partial_sums(gap: float, coefficients) -> float:
    """Direct sum of ``c_n r^n`` with ``r = 1 - gap`` until ``r^n`` drops below 1e-18."""
    count = int(42.0 / gap) + SERIES_TERMS
    n = np.arange(count, dtype=float)
    return float(np.sum(coefficients(n) * np.exp(n * np.log1p(-gap))))


def verify_thm_1_2(grid: GridConfig) -> Report:
    """Norm of H from H^inf to the Zygmund-type space lies in [3/2 + 2/pi, 3/2 + 4/pi]."""
    report = ReportBuilder("thm1.2")
    report.target("norm_lower", LOWER_BOUND, Provenance.PAPER, BRACKET_SLACK)
    report.target("norm_upper", UPPER_BOUND, Provenance.PAPER, BRACKET_SLACK)
    report.target("lower_curve_limit", 2.0, Provenance.PAPER, 1e-3)
    report.note(
        "the exact operator norm is open; the Zygmund-type norm of H(1) is reported as data"
    )

    # A truncated H(1) oscillates once 1 - r drops below 1/N, so the norm is taken
    # from the integral form at every level.
    weighted, converged = zygmund_trace(HilbertOperator(Lebesgue()), grid)
    gaps = grid.gaps
    means = weighted / (gaps * (2.0 - gaps))
    value = ZYGMUND_OFFSET + float(np.max(weighted))
    trace = ZYGMUND_OFFSET + running_sup(weighted)
    report.computed("zygmund_norm_H(1)", value, trace, converged=converged)
    report.check(
        "norm_in_bracket",
        LOWER_BOUND - BRACKET_SLACK <= value <= UPPER_BOUND + BRACKET_SLACK,
        f"value {value:.6f}",
        converged=converged,
    )

    levels = grid.levels
    curve = lower_curve(grid.gaps)
    report.computed("lower_curve", float(curve[-1]), curve)
    report.check("lower_curve_increasing", is_increasing(curve))
    at = min(grid.J, LOWER_CURVE_LEVEL)
    report.limit(
        "lower_curve_reaches_2",
        curve[at] >= 1.999,
        f"(1+r)F(r) = {curve[at]:.6f} at j = {at}",
        reached=grid.J >= LOWER_CURVE_LEVEL,
    )

    values = psi(grid.gaps[1:])
    report.check("psi_positive", bool(np.all(values > 0.0)), f"min {np.min(values):.3g}")

    top = grid.J
    report.computed("M1_H(1)''", float(means[-1]), means, converged=converged)
    series_bound = fejer_riesz_series(gaps) / math.pi
    report.check(
        "fejer_riesz_lower_bound",
        bool(np.all(means >= series_bound - 1e-6)),
        f"min(M_1 - S/pi) = {np.min(means - series_bound):.3g}",
        converged=converged,
    )
    checked = levels[1 : min(top, IDENTITY_LEVEL) + 1]
    quadrature = np.array([fejer_riesz_bound(Lebesgue(), float(grid.gaps[j])) for j in checked])
    report.check(
        "fejer_riesz_series_matches_integral",
        bool(np.allclose(quadrature, series_bound[checked], rtol=IDENTITY_TOL, atol=0.0)),
    )

    envelope = upper_envelope(gaps)
    report.computed("upper_envelope", float(envelope[-1]), envelope)
    report.check(
        "upper_envelope_bound",
        bool(np.all(weighted <= envelope * (1.0 + 1e-9))),
        f"max((1-r^2)M_1 - envelope) = {np.max(weighted - envelope):.3g}",
        converged=converged,
    )
    report.check("upper_envelope_increasing", is_increasing(envelope))
    report.limit(
        "upper_envelope_limit",
        abs(envelope[-1] / (4.0 / math.pi) - 1.0) <= 0.01,
        f"envelope {envelope[-1]:.6f} at j = {top}",
        reached=top >= ENVELOPE_LEVEL,
    )

    identity = []
    for gap in grid.gaps[1 : IDENTITY_LEVEL + 1]:
        # r^(2n) = (1 - gap')^n with gap' = 1 - r^2
        direct = _partial_sums(float(gap * (2.0 - gap)), lambda n: (n + 1.0) / (n + 1.5))
        identity.append(abs(direct / upper_series(gap).item() - 1.0))
    report.check(
        "upper_series_identity",
        max(identity) <= IDENTITY_TOL,
        f"max relative error {max(identity):.3g}",
    )
    return report.build()


def verify_thm_1_3(grid: GridConfig) -> Report:
    """Norm of H from H^inf to the Bloch space equals 3."""
    report = ReportBuilder("thm1.3")
    report.target("norm", 3.0, Provenance.PAPER, 0.005)
    report.target("G(0)", 0.5, Provenance.TRIVIAL)

    fixed = np.ldexp(1.0, -np.arange(BLOCH_LEVELS + 1))
    kernel = bloch_kernel(fixed)
    report.computed("1+G", float(1.0 + kernel[-1]), 1.0 + kernel)
    report.check("G(0)", abs(kernel[0] - 0.5) <= 1e-15)
    report.check("G_increasing", is_increasing(kernel))
    report.check(
        "G_limit", 1.0 + kernel[-1] >= 2.995, f"1 + G = {1.0 + kernel[-1]:.9f} at j = 24"
    )

    errors = []
    for gap in fixed[1 : IDENTITY_LEVEL + 1]:
        gap = float(gap)
        x = 1.0 - gap
        series = (1.0 + x) * _partial_sums(gap, lambda n: 1.0 / ((n + 1.0) * (n + 2.0)))
        quad = integrate_graded(lambda t, u: u / (gap + x * u), scale=gap, rel_tol=1e-13)
        closed = bloch_kernel(gap).item()
        errors.append(max(abs(series / closed - 1.0), abs((1.0 + x) * quad.value / closed - 1.0)))
    report.check(
        "G_series_matches_quadrature",
        max(errors) <= IDENTITY_TOL,
        f"max relative error {max(errors):.3g}",
    )

    truncation = max(grid.truncation, 1 << 15)
    image = norm(hlog(truncation), SpaceSpec(family=SpaceFamily.BLOCH), grid)
    report.computed("bloch_norm_H(1)", image.value, image.trace, converged=image.converged)
    report.check(
        "bloch_trace_below_3",
        max(image.trace) <= 3.0 + 1e-9,
        f"max {max(image.trace):.9f}",
        converged=image.converged,
    )
    report.limit(
        "bloch_trace_approaches_3",
        image.value >= 2.985,
        f"value {image.value:.6f}",
        reached=grid.J >= BLOCH_LEVEL,
        converged=image.converged,
    )

    top = min(grid.J, CESARO_MAX_LEVEL)
    cesaro = []
    for gap in grid.gaps[: top + 1]:
        gap = float(gap)
        image_c = cesaro_action(ONE, out_degree=CESARO_OVERSAMPLING * round(1.0 / gap))
        derivative = abs(image_c.differentiate(1).eval(1.0 - gap))
        cesaro.append(gap * (2.0 - gap) * derivative)
    lower = 1.0 + np.maximum.accumulate(cesaro)
    report.computed("cesaro_bloch_lower_bound", float(lower[-1]), lower)
    report.check("cesaro_below_3", bool(lower[-1] <= 3.0 + 1e-9))
    report.limit(
        "cesaro_approaches_3",
        lower[-1] >= 2.985,
        f"value {lower[-1]:.6f}",
        reached=grid.J >= BLOCH_LEVEL,
    )
    return report.build()
