"""Norm evaluators.

Sup-type norms (Bloch, Zygmund, mean Lipschitz, Hardy) are grid suprema over
``r_j = 1 - 2^-j`` and therefore lower estimates; their trace is the running sup and
their status comes from its trend. Integral-type norms (Dirichlet, Hardy-Littlewood,
B_q) are computed by graded quadrature or exact coefficient sums.
"""

import math

import numpy as np
from loguru import logger

from hilbertlab.analytic import TaylorSeries, integral_mean
from hilbertlab.errors import QuadratureError
from hilbertlab.measures.carleson import FIRST_TRACE_LEVEL, running_sup, trend_verdict
from hilbertlab.models import CircleMeanSpec, GridConfig, NormResult, NormStatus, TrendStatus
from hilbertlab.quadrature import integrate_graded
from hilbertlab.spaces.base import (
    SpaceDef,
    SpaceFamily,
    SpaceSpec,
    check_bq,
    check_hl,
    check_mean_lipschitz,
    check_positive_q,
)

_STATUS = {
    TrendStatus.STABLE: NormStatus.STABLE,
    TrendStatus.DIVERGING: NormStatus.UNBOUNDED_AT_GRID,
    TrendStatus.UNDETERMINED: NormStatus.UNSETTLED,
}


def _mean_or_partial(series: TaylorSeries, r: float, spec: CircleMeanSpec, grid: GridConfig):
    try:
        mean = integral_mean(
            series, r, spec, rel_tol=grid.rel_tol, max_doublings=grid.max_doublings
        )
        return mean, True
    except QuadratureError as exc:
        return exc.partial, False


def grid_sup(
    f: TaylorSeries,
    space: SpaceSpec,
    grid: GridConfig,
    *,
    order: int,
    p: float,
    weight_exponent: float,
    offset: float = 0.0,
) -> NormResult:
    """``offset + sup_j (1 - r_j^2)^w M_p(r_j, f^(order))`` over the radial grid."""
    series = f.differentiate(order)
    spec = CircleMeanSpec(p=p, nodes=grid.angular_nodes)
    values = np.empty(grid.J + 1)
    converged = True
    for j, (r, gap) in enumerate(zip(grid.radii, grid.gaps, strict=True)):
        mean, ok = _mean_or_partial(series, float(r), spec, grid)
        converged &= ok
        values[j] = (gap * (2.0 - gap)) ** weight_exponent * mean

    trace = offset + running_sup(values)
    peak = int(np.argmax(values))
    r_peak = float(grid.radii[peak])
    gap = float(grid.gaps[peak])
    error = (gap * (2.0 - gap)) ** weight_exponent * f.tail_bound(r_peak, order)
    status = _STATUS[trend_verdict(trace[FIRST_TRACE_LEVEL:])]
    if not converged:
        logger.warning("Norm evaluation left unconverged means", space=space.label)
    return NormResult(
        space=space.label,
        value=float(trace[-1]),
        attained_at=r_peak,
        converged=converged,
        status=status,
        trace=trace.tolist(),
        error_estimate=error if math.isfinite(error) else None,
    )


def bloch_norm(f: TaylorSeries, space: SpaceSpec, grid: GridConfig) -> NormResult:
    """``|f(0)| + sup (1 - |z|^2) |f'(z)|``."""
    offset = abs(f.coeffs[0])
    return grid_sup(f, space, grid, order=1, p=math.inf, weight_exponent=1.0, offset=offset)


def zygmund_norm(f: TaylorSeries, space: SpaceSpec, grid: GridConfig) -> NormResult:
    """``|f(0)| + |f'(0)| + sup (1 - r^2) M_1(r, f'')``."""
    first = abs(f.coeffs[1]) if f.degree >= 1 else 0.0
    offset = abs(f.coeffs[0]) + first
    return grid_sup(f, space, grid, order=2, p=1.0, weight_exponent=1.0, offset=offset)


def mean_lipschitz_norm(f: TaylorSeries, space: SpaceSpec, grid: GridConfig) -> NormResult:
    """``|f(0)| + sup (1 - r^2)^(1 - alpha) M_p(r, f')``."""
    return grid_sup(
        f, space, grid, order=1, p=space.p, weight_exponent=1.0 - space.alpha,
        offset=abs(f.coeffs[0]),
    )


def hardy_norm(f: TaylorSeries, space: SpaceSpec, grid: GridConfig) -> NormResult:
    """``sup M_q(r, f)``."""
    return grid_sup(f, space, grid, order=0, p=space.q, weight_exponent=0.0)


def _radial_integral(
    integrand, space: SpaceSpec, grid: GridConfig, *, endpoint_power: float, scale: float
) -> tuple[float, float, bool]:
    try:
        result = integrate_graded(
            integrand, endpoint_power=endpoint_power, scale=scale, rel_tol=grid.rel_tol
        )
        return float(result.value), result.error, True
    except QuadratureError as exc:
        logger.warning("Norm quadrature did not converge", space=space.label)
        previous, current = float(exc.previous), float(exc.current)
        return current, abs(current - previous), False


def _means(
    series: TaylorSeries, radii: np.ndarray, spec: CircleMeanSpec, grid: GridConfig, failed: list
) -> np.ndarray:
    values = np.empty(radii.size)
    for i, r in enumerate(radii):
        values[i], good = _mean_or_partial(series, float(r), spec, grid)
        if not good:
            failed.append(float(r))
    return values


def dirichlet_norm(f: TaylorSeries, space: SpaceSpec, grid: GridConfig) -> NormResult:
    """``(|f(0)|^q + int |f'|^q (1 - |z|)^(q-1) dA)^(1/q)`` with normalised area measure.

    In polar coordinates the area term is ``2 int_0^1 rho M_q(rho, f')^q (1-rho)^(q-1) drho``.
    """
    q = space.q
    derivative = f.differentiate(1)
    spec = CircleMeanSpec(p=q, nodes=grid.angular_nodes)

    failed: list[float] = []

    def integrand(t, u):
        return 2.0 * t * _means(derivative, t, spec, grid, failed) ** q

    area, error, converged = _radial_integral(
        integrand, space, grid, endpoint_power=q - 1.0, scale=1.0 / (f.degree + 1)
    )
    converged = converged and not failed
    total = abs(f.coeffs[0]) ** q + area
    value = total ** (1.0 / q)
    # d(total^(1/q)) = (1/q) total^(1/q - 1) d(total)
    spread = value / (q * total) * error if total > 0.0 else error ** (1.0 / q)
    return NormResult(
        space=space.label, value=value, converged=converged, trace=[value],
        error_estimate=spread,
    )


def hardy_littlewood_norm(f: TaylorSeries, space: SpaceSpec, grid: GridConfig) -> NormResult:
    """``(sum (n+1)^(q-2) |a_n|^q)^(1/q)`` over the stored coefficients."""
    q = space.q
    n = np.arange(f.degree + 1, dtype=float)
    value = float(np.sum((n + 1.0) ** (q - 2.0) * np.abs(f.coeffs) ** q)) ** (1.0 / q)
    return NormResult(space=space.label, value=value, converged=True, trace=[value])


def bq_norm(f: TaylorSeries, space: SpaceSpec, grid: GridConfig) -> NormResult:
    """``int_0^1 (1 - r)^(1/q - 2) M_1(r, f) dr``."""
    spec = CircleMeanSpec(p=1.0, nodes=grid.angular_nodes)
    failed: list[float] = []
    value, error, converged = _radial_integral(
        lambda t, u: _means(f, t, spec, grid, failed),
        space,
        grid,
        endpoint_power=1.0 / space.q - 2.0,
        scale=1.0 / (f.degree + 1),
    )
    converged = converged and not failed
    return NormResult(
        space=space.label, value=value, converged=converged, trace=[value], error_estimate=error
    )


BLOCH = SpaceDef(SpaceFamily.BLOCH, (), sup_type=True, evaluate=bloch_norm)
ZYGMUND1 = SpaceDef(SpaceFamily.ZYGMUND1, (), sup_type=True, evaluate=zygmund_norm)
MEAN_LIPSCHITZ = SpaceDef(
    SpaceFamily.MEAN_LIPSCHITZ, ("p", "alpha"), sup_type=True, evaluate=mean_lipschitz_norm,
    check=check_mean_lipschitz,
)
HARDY = SpaceDef(
    SpaceFamily.HARDY, ("q",), sup_type=True, evaluate=hardy_norm, check=check_positive_q
)
DIRICHLET = SpaceDef(
    SpaceFamily.DIRICHLET, ("q",), sup_type=False, evaluate=dirichlet_norm, check=check_positive_q
)
HARDY_LITTLEWOOD = SpaceDef(
    SpaceFamily.HARDY_LITTLEWOOD, ("q",), sup_type=False, evaluate=hardy_littlewood_norm,
    check=check_hl,
)
BQ = SpaceDef(SpaceFamily.BQ, ("q",), sup_type=False, evaluate=bq_norm, check=check_bq)
