"""Graded Gauss rules for integrands that concentrate at an endpoint.

Radial integrals over [0, 1) are parametrised by the distance ``u = 1 - t`` to the
boundary. The interval is cut into dyadic cells ``[2^-(j+1), 2^-j]`` with a fixed
Gauss-Legendre rule per cell; the last cell ``[0, 2^-L]`` carries a Gauss-Jacobi rule
for the endpoint weight ``u^e``. Integrands receive both ``t`` and ``u`` so kernels
such as ``1 / (1 - t z)`` can be formed as ``(1 - z) + u z`` without cancellation.

Circle means of kernels that peak at ``theta = 0`` use the same construction in
``|theta|``, mirrored onto ``[-pi, pi]``.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from loguru import logger
from scipy.special import roots_jacobi, roots_legendre

from hilbertlab.errors import QuadratureError

RadialIntegrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

ORDERS = (16, 24, 32, 48)
LEVEL_STEP = 4
BASE_LEVEL = 8
MAX_LEVEL = 44
ABS_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureResult:
    value: complex | float | np.ndarray
    error: float
    levels: int
    order: int


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = roots_legendre(order)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=256)
def gauss_jacobi(order: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1] for the weight ``v^exponent``."""
    if exponent <= -1.0:
        raise ValueError(f"endpoint exponent must exceed -1, got {exponent}")
    if exponent == 0.0:
        return gauss_legendre(order)
    x, w = roots_jacobi(order, 0.0, exponent)
    return 0.5 * (x + 1.0), w * 0.5 ** (exponent + 1.0)


def radial_nodes(
    levels: int, order: int, endpoint_power: float = 0.0, span: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Distances ``u`` in (0, span) and weights for ``int_0^span u^p g(u) du``."""
    x, w = gauss_legendre(order)
    lo = np.ldexp(1.0, -np.arange(1, levels + 1))  # cell j is [2^-(j+1), 2^-j]
    widths = lo
    u = (lo[:, None] + widths[:, None] * x[None, :]).ravel()
    weights = (widths[:, None] * w[None, :]).ravel()
    if endpoint_power:
        weights = weights * u**endpoint_power

    h = math.ldexp(1.0, -levels)
    xj, wj = gauss_jacobi(order, float(endpoint_power))
    u = np.concatenate([u, h * xj])
    weights = np.concatenate([weights, wj * h ** (endpoint_power + 1.0)])

    if span != 1.0:
        u = u * span
        weights = weights * span ** (endpoint_power + 1.0)
    return u, weights


def start_level(scale: float | None) -> int:
    """Coarsest level that resolves a feature of width ``scale`` next to the endpoint."""
    if scale is None or scale <= 0.0 or not math.isfinite(scale):
        return BASE_LEVEL
    return min(MAX_LEVEL, max(BASE_LEVEL, math.ceil(math.log2(1.0 / scale)) + LEVEL_STEP))


def _contract(weights: np.ndarray, values) -> np.ndarray:
    values = np.asarray(values)
    if values.ndim == 0:
        values = np.broadcast_to(values, weights.shape)
    return np.tensordot(weights, values, axes=(0, 0))


def _discrepancy(previous, current) -> tuple[float, float]:
    delta = float(np.max(np.abs(np.asarray(current) - np.asarray(previous))))
    size = float(np.max(np.abs(current))) if np.size(current) else 0.0
    return delta, size


def integrate_graded(
    integrand: RadialIntegrand,
    *,
    endpoint_power: float = 0.0,
    scale: float | None = None,
    span: float = 1.0,
    rel_tol: float = 1e-10,
    abs_tol: float = ABS_TOL,
) -> QuadratureResult:
    """Integrate ``(1 - t)^p * g(t, u)`` over ``1 - span < t < 1``.

    Levels and order are raised together until two successive estimates agree to
    ``rel_tol`` (with an absolute floor). Vector-valued integrands are supported: the
    first axis of ``g`` runs over the nodes.

    Raises:
        QuadratureError: if the refinement budget runs out.
    """
    level = start_level(scale / span if scale is not None else None)
    previous = None
    for step, order in enumerate(ORDERS):
        levels = min(MAX_LEVEL, level + LEVEL_STEP * step)
        u, w = radial_nodes(levels, order, endpoint_power, span)
        current = _contract(w, integrand(1.0 - u, u))
        if previous is not None:
            delta, size = _discrepancy(previous, current)
            if delta <= max(rel_tol * size, abs_tol):
                return QuadratureResult(_scalar(current), delta, levels, order)
        previous = current

    logger.warning(
        "Graded quadrature did not converge",
        endpoint_power=endpoint_power,
        scale=scale,
        delta=delta,
    )
    raise QuadratureError("graded quadrature did not converge", _scalar(previous), _scalar(current))


def _scalar(value):
    value = np.asarray(value)
    return value.item() if value.ndim == 0 else value


@lru_cache(maxsize=64)
def angular_nodes(levels: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes on (-pi, pi) and weights summing to one, graded towards ``theta = 0``."""
    x, w = gauss_legendre(order)
    lo = math.pi * np.ldexp(1.0, -np.arange(1, levels + 1))
    theta = (lo[:, None] + lo[:, None] * x[None, :]).ravel()
    weights = (lo[:, None] * w[None, :]).ravel()
    h = math.pi * math.ldexp(1.0, -levels)
    theta = np.concatenate([theta, h * x])
    weights = np.concatenate([weights, h * w])
    theta = np.concatenate([-theta[::-1], theta])
    weights = np.concatenate([weights[::-1], weights]) / (2.0 * math.pi)
    theta.setflags(write=False)
    weights.setflags(write=False)
    return theta, weights


def angular_levels(scale: float) -> int:
    """Number of dyadic cells needed to resolve a peak of width ``scale`` at theta = 0."""
    if scale <= 0.0:
        return MAX_LEVEL
    return min(MAX_LEVEL, max(4, math.ceil(math.log2(math.pi / scale)) + 2))


def circle_mean_graded(
    integrand: Callable[[np.ndarray], np.ndarray],
    *,
    scale: float,
    rel_tol: float = 1e-10,
    abs_tol: float = ABS_TOL,
) -> QuadratureResult:
    """Mean of ``g(theta)`` over the circle for integrands peaking at ``theta = 0``.

    ``g`` may return an array whose first axis runs over the angular nodes.
    """
    base = angular_levels(scale)
    previous = None
    for step, order in enumerate(ORDERS[:3]):
        levels = min(MAX_LEVEL, base + 2 * step)
        theta, w = angular_nodes(levels, order)
        current = _contract(w, integrand(theta))
        if previous is not None:
            delta, size = _discrepancy(previous, current)
            if delta <= max(rel_tol * size, abs_tol):
                return QuadratureResult(_scalar(current), delta, levels, order)
        previous = current

    logger.warning("Graded circle mean did not converge", scale=scale, delta=delta)
    raise QuadratureError(
        "graded circle mean did not converge", _scalar(previous), _scalar(current)
    )
