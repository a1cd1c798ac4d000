"""Coefficient-sequence criteria: the l^q moment test and the dyadic-block equivalence."""

import math

import numpy as np
from loguru import logger

from hilbertlab.config import settings
from hilbertlab.measures import RadialMeasure
from hilbertlab.models import BlockComparison, EllQResult, SeriesVerdict
from hilbertlab.quadrature import integrate_graded


def ell_q_criterion(
    measure: RadialMeasure,
    q: float,
    cutoff: int | None = None,
    *,
    block_growth_limit: float | None = None,
) -> EllQResult:
    """``sum_{n<=N} (n+1)^(q-2) mu_n^q`` plus a tail estimate.

    The tail is estimated by integral comparison with the power law fitted to the
    summands over the last dyadic block. The verdict is ``finite`` when that local decay
    exponent exceeds 1 and the last block grew the partial sum by at most
    ``block_growth_limit``; ``divergent`` when the block growth exceeds the limit or the
    exponent is at most 1; ``undetermined`` otherwise.
    """
    if q < 1.0:
        raise ValueError(f"the l^q criterion needs q >= 1, got {q}")
    cutoff = settings.ell_q_cutoff if cutoff is None else cutoff
    if cutoff < 2:
        raise ValueError(f"cutoff must be at least 2, got {cutoff}")
    limit = settings.stable_change if block_growth_limit is None else block_growth_limit

    n = np.arange(cutoff + 1, dtype=float)
    mu = np.asarray(measure.moments(cutoff + 1), dtype=float)
    summands = (n + 1.0) ** (q - 2.0) * mu**q
    partial = float(np.sum(summands))
    half = cutoff // 2
    head = float(np.sum(summands[: half + 1]))
    growth = (partial - head) / head if head > 0.0 else math.inf

    last, middle = summands[cutoff], summands[half]
    if last == 0.0:
        exponent, tail = math.inf, 0.0
    else:
        exponent = -math.log(last / middle) / math.log((cutoff + 1.0) / (half + 1.0))
        if exponent > 1.0:
            tail = last * (cutoff + 1.0) ** exponent * (cutoff + 1.5) ** (1.0 - exponent)
            tail /= exponent - 1.0
        else:
            tail = math.inf

    if growth > limit or exponent <= 1.0:
        verdict = SeriesVerdict.DIVERGENT
    elif exponent > 1.0 and growth <= limit:
        verdict = SeriesVerdict.FINITE
    else:
        verdict = SeriesVerdict.UNDETERMINED

    logger.debug(
        "l^q criterion", measure=measure.descriptor, q=q, partial=partial,
        exponent=exponent, verdict=verdict.value,
    )
    return EllQResult(
        value=partial + tail,
        partial_sum=partial,
        tail_estimate=tail,
        decay_exponent=exponent,
        block_growth=growth,
        cutoff=cutoff,
        verdict=verdict,
    )


def dyadic_blocks(lam: np.ndarray) -> np.ndarray:
    """Block sums over ``I_0 = {0}`` and ``I_n = [2^(n-1), 2^n)``."""
    sums = [float(lam[0])]
    start = 1
    while start < lam.size:
        sums.append(float(np.sum(lam[start : 2 * start])))
        start *= 2
    return np.array(sums)


def block_equivalence(lam, p: float, beta: float, *, rel_tol: float = 1e-10) -> BlockComparison:
    """Both sides of the dyadic-block equivalence for a nonnegative sequence.

    ``lhs = int_0^1 (1 - r)^(p beta - 1) (sum lam_n r^n)^p dr`` by graded quadrature;
    ``rhs = sum_n 2^(-n p beta) (sum_{k in I_n} lam_k)^p`` over dyadic blocks.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.ndim != 1 or lam.size == 0:
        raise ValueError("the sequence must be a non-empty one-dimensional array")
    if np.any(lam < 0.0):
        raise ValueError("the sequence must be nonnegative")
    if p <= 0.0 or beta <= 0.0:
        raise ValueError("p and beta must be positive")

    coeffs = lam[::-1]

    def integrand(t, u):
        return np.polyval(coeffs, t) ** p

    lhs = integrate_graded(
        integrand, endpoint_power=p * beta - 1.0, scale=1.0 / lam.size, rel_tol=rel_tol
    ).value
    blocks = dyadic_blocks(lam)
    weights = np.exp2(-np.arange(blocks.size) * p * beta)
    rhs = float(np.sum(weights * blocks**p))
    return BlockComparison(lhs=float(lhs), rhs=rhs)
