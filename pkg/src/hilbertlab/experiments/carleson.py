"""Boundedness into the Zygmund-type space against the Carleson condition."""

import math

import numpy as np

from hilbertlab.analytic import TaylorSeries
from hilbertlab.errors import QuadratureError
from hilbertlab.measures import (
    RadialMeasure,
    Variant,
    bundled_families,
    carleson_constant,
    carleson_integral_trend,
)
from hilbertlab.measures.carleson import FIRST_TRACE_LEVEL, running_sup, trend_verdict
from hilbertlab.models import GridConfig, Provenance, Report
from hilbertlab.operator import HilbertOperator

from .base import ReportBuilder

ONE = TaylorSeries.polynomial([1.0], label="1")


def fejer_riesz_bound(measure: RadialMeasure, gap: float, *, rel_tol: float = 1e-12) -> float:
    """Lower bound ``(1/pi) int t^2 (2 - t r) / (1 - t r)^2 dmu`` for ``M_1(r, H_mu(1)'')``.

    ``r = 1 - gap``; the integrand is written with ``1 - t r = gap + r (1 - t)``.
    """
    r = 1.0 - gap

    def integrand(t, u):
        return t**2 * (2.0 - t * r) / (gap + r * u) ** 2

    return float(np.real(measure.quad(integrand, scale=gap, rel_tol=rel_tol))) / math.pi


def zygmund_trace(op: HilbertOperator, grid: GridConfig) -> tuple[np.ndarray, bool]:
    """``(1 - r_j^2) M_1(r_j, H_mu(1)'')`` on the grid, from the integral form."""
    values = np.empty(grid.J + 1)
    converged = True
    for j, gap in enumerate(grid.gaps):
        gap = float(gap)
        try:
            mean = op.derivative_mean(ONE, gap, 2, rel_tol=grid.rel_tol)
        except QuadratureError as exc:
            converged = False
            mean = float(np.real(exc.partial))
        values[j] = gap * (2.0 - gap) * mean
    return values, converged


def _check_measure(report: ReportBuilder, measure: RadialMeasure, grid: GridConfig) -> None:
    name = measure.descriptor
    carleson = carleson_constant(measure, 1.0, grid)
    report.computed(f"{name}/carleson_constant", carleson.value, carleson.trace)

    op = HilbertOperator(measure, max_degree=grid.truncation)
    values, converged = zygmund_trace(op, grid)
    sup = running_sup(values)
    trace = sup[FIRST_TRACE_LEVEL:]
    zygmund = trend_verdict(trace)
    report.computed(f"{name}/zygmund_seminorm", float(sup[-1]), trace, converged=converged)

    report.agree(
        f"{name}/carleson_iff_bounded",
        {"carleson": carleson.verdict.value, "zygmund": zygmund.value},
    )

    flags = {"carleson": carleson.verdict.value}
    for variant in Variant:
        result = carleson_integral_trend(measure, 1.0, 0.0, 1.0, variant, grid)
        report.computed(
            f"{name}/carleson_integral_{variant.value}", result.value, result.trace,
            converged=result.converged,
        )
        flags[variant.value] = result.verdict.value
    report.agree(f"{name}/kernel_characterisations_agree", flags)

    # Fejer-Riesz: the diameter integral of |F''| bounds the circle mean from below.
    bounds = np.array([fejer_riesz_bound(measure, float(gap)) for gap in grid.gaps])
    means = values / (grid.gaps * (2.0 - grid.gaps))
    slack = 1e-9 * np.abs(means) + 1e-12
    worst = float(np.max(bounds - means))
    report.check(
        f"{name}/fejer_riesz_lower_bound",
        bool(np.all(bounds <= means + slack)),
        f"max(bound - M_1) = {worst:.3g}",
        converged=converged,
    )


def verify_thm_1_1(grid: GridConfig, family: list[RadialMeasure] | None = None) -> Report:
    """Carleson condition versus boundedness of H_mu from H^inf into the Zygmund-type space.

    For each measure the Carleson-constant trend and the trend of
    ``sup (1 - r^2) M_1(r, H_mu(1)'')`` must agree (both stable or both diverging).
    """
    family = bundled_families() if family is None else family
    report = ReportBuilder("thm1.1")
    report.target("carleson_exponent", 1.0, Provenance.PAPER)
    if not family:
        report.note("empty measure family: nothing to check")
    for measure in family:
        _check_measure(report, measure, grid)
    return report.build()
