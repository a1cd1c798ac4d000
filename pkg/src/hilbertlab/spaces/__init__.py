"""Space registry, the space mini-language and the norm entry point.

    bloch | zygmund1 | mean_lipschitz:p=<p>[,alpha=<a>] | hardy:q=<q>
    dirichlet:q=<q> | hl:q=<q> | bq:q=<q>
"""

from pydantic import ValidationError

from hilbertlab import descriptors
from hilbertlab.analytic import TaylorSeries
from hilbertlab.models import GridConfig, NormResult

from .base import SpaceDef, SpaceFamily, SpaceSpec
from .kernels import (
    disk_kernel_integral,
    kernel_mean_bounds,
    kernel_mean_Ic,
    normalized_kernel_mean,
    sharp_constant,
)
from .norms import BLOCH, BQ, DIRICHLET, HARDY, HARDY_LITTLEWOOD, MEAN_LIPSCHITZ, ZYGMUND1
from .sequences import block_equivalence, dyadic_blocks, ell_q_criterion

SPACE_REGISTRY: dict[SpaceFamily, SpaceDef] = {
    s.family: s
    for s in [BLOCH, ZYGMUND1, MEAN_LIPSCHITZ, HARDY, DIRICHLET, HARDY_LITTLEWOOD, BQ]
}


def norm(f: TaylorSeries, space: SpaceSpec, grid: GridConfig | None = None) -> NormResult:
    """Grid estimate of ``||f||`` in ``space``."""
    grid = GridConfig() if grid is None else grid
    return SPACE_REGISTRY[space.family].evaluate(f, space, grid)


def parse_space(text: str) -> SpaceSpec:
    """Build a space from its descriptor.

    Raises:
        DescriptorError: on unknown families, unknown parameters or out-of-range values.
    """
    d = descriptors.parse(text)
    try:
        family = SpaceFamily(d.name)
    except ValueError:
        names = sorted(f.value for f in SpaceFamily)
        raise d.fail(f"unknown space {d.name!r} (expected one of {names})", 0) from None
    items = d.keyed(d.single_group(), optional=SPACE_REGISTRY[family].params)
    params = {key: descriptors.as_float(d, item) for key, item in items.items()}
    try:
        return SpaceSpec(family=family, **params)
    except ValidationError as exc:
        message = exc.errors()[0]["msg"].removeprefix("Value error, ")
        raise d.fail(message, len(d.name) + 1) from None


__all__ = [
    "SPACE_REGISTRY",
    "SpaceDef",
    "SpaceFamily",
    "SpaceSpec",
    "block_equivalence",
    "disk_kernel_integral",
    "dyadic_blocks",
    "ell_q_criterion",
    "kernel_mean_Ic",
    "kernel_mean_bounds",
    "norm",
    "normalized_kernel_mean",
    "parse_space",
    "sharp_constant",
]
