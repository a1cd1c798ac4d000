"""Measure registry and the measure mini-language.

    lebesgue
    power:alpha=<alpha>
    atomic:t=<t1>,w=<w1>;t=<t2>,w=<w2>;...
"""

from collections.abc import Callable

from hilbertlab import descriptors
from hilbertlab.errors import MeasureError
from hilbertlab.measures.base import RadialMeasure
from hilbertlab.measures.carleson import (
    Variant,
    carleson_constant,
    carleson_integral,
    carleson_integral_trend,
    trend_verdict,
)
from hilbertlab.measures.families import Atomic, Density, Lebesgue, PowerWeight


def _lebesgue(d: descriptors.Descriptor) -> RadialMeasure:
    if d.groups:
        raise d.fail("'lebesgue' takes no arguments")
    return Lebesgue()


def _power(d: descriptors.Descriptor) -> RadialMeasure:
    item = d.keyed(d.single_group(), required=("alpha",))["alpha"]
    alpha = descriptors.as_float(d, item)
    try:
        return PowerWeight(alpha)
    except MeasureError as exc:
        raise d.fail(str(exc), item.position) from None


def _atomic(d: descriptors.Descriptor) -> RadialMeasure:
    atoms = []
    for group in d.groups:
        items = d.keyed(group, required=("t", "w"))
        t, w = descriptors.as_float(d, items["t"]), descriptors.as_float(d, items["w"])
        if not 0.0 <= t < 1.0:
            raise d.fail(f"atom position must lie in [0, 1), got {t:g}", items["t"].position)
        if not w > 0.0:
            raise d.fail(f"atom weight must be positive, got {w:g}", items["w"].position)
        atoms.append((t, w))
    return Atomic(tuple(atoms))


MEASURE_BUILDERS: dict[str, Callable[[descriptors.Descriptor], RadialMeasure]] = {
    "lebesgue": _lebesgue,
    "power": _power,
    "atomic": _atomic,
}

# Families every verification batch runs against.
BUNDLED_FAMILIES: tuple[str, ...] = (
    "lebesgue",
    "power:alpha=0.5",
    "power:alpha=2",
    "atomic:t=0.5,w=1",
    "atomic:t=0.3,w=2;t=0.8,w=1",
)


def parse_measure(text: str) -> RadialMeasure:
    """Build a measure from its descriptor.

    Raises:
        DescriptorError: on unknown names, malformed arguments or invalid parameters.
    """
    d = descriptors.parse(text)
    builder = MEASURE_BUILDERS.get(d.name)
    if builder is None:
        raise d.fail(f"unknown measure {d.name!r} (expected one of {sorted(MEASURE_BUILDERS)})", 0)
    if d.name != "lebesgue" and not d.groups:
        raise d.fail(f"{d.name!r} needs arguments", len(d.text))
    return builder(d)


def bundled_families() -> list[RadialMeasure]:
    return [parse_measure(text) for text in BUNDLED_FAMILIES]


__all__ = [
    "BUNDLED_FAMILIES",
    "MEASURE_BUILDERS",
    "Atomic",
    "Density",
    "Lebesgue",
    "PowerWeight",
    "RadialMeasure",
    "Variant",
    "bundled_families",
    "carleson_constant",
    "carleson_integral",
    "carleson_integral_trend",
    "parse_measure",
    "trend_verdict",
]
