"""Carleson-type tests on a dyadic grid of radii.

A measure is s-Carleson when ``mu([t, 1)) <= C (1 - t)^s``. On the grid
``t_j = 1 - 2^-j`` the constant is approximated by a running supremum whose trend
over the last refinements decides between ``stable`` and ``diverging``.
"""

import math
from enum import Enum

import numpy as np
from loguru import logger

from hilbertlab.config import settings
from hilbertlab.errors import QuadratureError
from hilbertlab.measures.base import RadialMeasure
from hilbertlab.models import CarlesonResult, GridConfig, TrendStatus

FIRST_TRACE_LEVEL = 4
S2_ANGLES = (0.0, math.pi / 8, math.pi / 2, math.pi)


class Variant(str, Enum):
    S1 = "S1"
    S2 = "S2"


def running_sup(values) -> np.ndarray:
    return np.maximum.accumulate(np.asarray(values, dtype=float))


def trend_verdict(
    trace,
    *,
    stable_change: float | None = None,
    diverging_growth: float | None = None,
    window: int = 3,
) -> TrendStatus:
    """Classify a running supremum by its last ``window`` refinements.

    ``stable`` when it moved by less than ``stable_change`` (relative) over the window,
    ``diverging`` when every step in the window grew by more than ``diverging_growth``.
    """
    stable_change = settings.stable_change if stable_change is None else stable_change
    diverging_growth = settings.diverging_growth if diverging_growth is None else diverging_growth
    trace = np.asarray(trace, dtype=float)
    if trace.size <= window:
        return TrendStatus.UNDETERMINED
    last = trace[-(window + 1):]
    if not np.all(np.isfinite(last)):
        return TrendStatus.DIVERGING if np.isinf(last[-1]) else TrendStatus.UNDETERMINED
    base = last[0]
    if base == 0.0:
        return TrendStatus.STABLE if last[-1] == 0.0 else TrendStatus.UNDETERMINED
    if (last[-1] - base) / abs(base) < stable_change:
        return TrendStatus.STABLE
    steps = last[1:] / last[:-1]
    if np.all(steps > 1.0 + diverging_growth):
        return TrendStatus.DIVERGING
    return TrendStatus.UNDETERMINED


def _trend(values: np.ndarray, radii: np.ndarray, converged: bool = True) -> CarlesonResult:
    sup = running_sup(values)
    trace = sup[FIRST_TRACE_LEVEL:] if sup.size > FIRST_TRACE_LEVEL else sup[-1:]
    peak = int(np.argmax(values))
    return CarlesonResult(
        value=float(sup[-1]),
        verdict=trend_verdict(trace),
        attained_at=float(radii[peak]),
        trace=trace.tolist(),
        converged=converged,
    )


def carleson_constant(measure: RadialMeasure, s: float, grid: GridConfig) -> CarlesonResult:
    """Sup over ``t_j = 1 - 2^-j`` of ``mu([t_j, 1)) / (1 - t_j)^s``, j = 0..J.

    The trace holds the running supremum for J' = 4..J.
    """
    if s <= 0.0:
        raise ValueError(f"Carleson exponent must be positive, got {s}")
    gaps = grid.gaps
    ratios = np.array([measure.tail_at_gap(u) / u**s for u in gaps])
    result = _trend(ratios, grid.radii)
    logger.debug(
        "Carleson constant", measure=measure.descriptor, s=s, value=result.value,
        verdict=result.verdict.value,
    )
    return result


def carleson_integral(
    measure: RadialMeasure,
    w: complex,
    beta: float,
    q: float,
    s: float,
    variant: Variant | str = Variant.S1,
    *,
    rel_tol: float = 1e-10,
) -> float:
    """Kernel integral of the Carleson characterisation.

    S1: ``int (1-|w|)^beta / ((1-t)^q (1-|w|t)^(s+beta-q)) dmu``;
    S2 replaces ``1 - |w| t`` by ``|1 - w t|``.

    Raises:
        QuadratureError: when the integral does not settle; ``partial`` carries the
            last estimate.
    """
    variant = Variant(variant)
    if not 0.0 <= q < s:
        raise ValueError(f"need 0 <= q < s, got q={q}, s={s}")
    if abs(w) >= 1.0:
        raise ValueError(f"need |w| < 1, got {w}")
    rho = abs(w)
    power = s + beta - q
    gap = 1.0 - rho
    factor = gap**beta

    if variant is Variant.S1:
        def kernel(t, u):
            return factor / (gap + rho * u) ** power
    else:
        one_minus_w = 1.0 - w

        def kernel(t, u):
            return factor / np.abs(one_minus_w + w * u) ** power

    return float(np.real(measure.quad(kernel, endpoint_power=-q, scale=gap, rel_tol=rel_tol)))


def carleson_integral_trend(
    measure: RadialMeasure,
    beta: float,
    q: float,
    s: float,
    variant: Variant | str,
    grid: GridConfig,
) -> CarlesonResult:
    """Running sup of ``carleson_integral`` over ``|w| = 1 - 2^-j`` (several angles for S2)."""
    variant = Variant(variant)
    angles = (0.0,) if variant is Variant.S1 else S2_ANGLES
    values = []
    converged = True
    for rho in grid.radii:
        best = 0.0
        for phi in angles:
            w = complex(rho * math.cos(phi), rho * math.sin(phi))
            try:
                value = carleson_integral(measure, w, beta, q, s, variant)
            except QuadratureError as exc:
                converged = False
                value = float(np.real(exc.partial))
            best = max(best, value)
        values.append(best)
    return _trend(np.array(values), grid.radii, converged=converged)
