"""Parser for the text mini-languages used by the CLI and the HTTP surface.

Every descriptor has the shape ``name[:body]``. The body is a ``;``-separated list
of groups, each group a ``,``-separated list of items, each item either a bare
value or ``key=value``::

    const:1+2j
    poly:1,0.5,-0.25
    atomic:t=0.3,w=2;t=0.8,w=1
    J=12,nodes=256

Positions are tracked so that parse failures point at the offending character.
"""

from dataclasses import dataclass

from hilbertlab.errors import DescriptorError


@dataclass(frozen=True)
class Item:
    key: str | None
    value: str
    position: int  # offset of the value in the full text


@dataclass(frozen=True)
class Descriptor:
    text: str
    name: str
    groups: tuple[tuple[Item, ...], ...]

    def fail(self, message: str, position: int | None = None) -> DescriptorError:
        return DescriptorError(message, self.text, len(self.name) if position is None else position)

    def single_group(self) -> tuple[Item, ...]:
        if len(self.groups) > 1:
            second = self.groups[1]
            raise self.fail("unexpected ';'", second[0].position - 1 if second else None)
        return self.groups[0] if self.groups else ()

    def keyed(
        self,
        group: tuple[Item, ...],
        *,
        required: tuple[str, ...] = (),
        optional: tuple[str, ...] = (),
    ) -> dict[str, Item]:
        """Map ``key=value`` items by key, rejecting unknown, duplicate or missing keys."""
        allowed = set(required) | set(optional)
        found: dict[str, Item] = {}
        for item in group:
            if item.key is None:
                raise self.fail("expected key=value", item.position)
            if item.key not in allowed:
                raise self.fail(
                    f"unknown key {item.key!r} (expected one of {sorted(allowed)})",
                    item.position - len(item.key) - 1,
                )
            if item.key in found:
                raise self.fail(f"duplicate key {item.key!r}", item.position - len(item.key) - 1)
            found[item.key] = item
        for key in required:
            if key not in found:
                raise self.fail(f"missing key {key!r}", len(self.text))
        return found


def parse(text: str) -> Descriptor:
    """Split a descriptor into its name and positioned items."""
    if not text or not text.strip():
        raise DescriptorError("empty descriptor", text or "", 0)
    head, sep, body = text.partition(":")
    name = head.strip()
    if not name:
        raise DescriptorError("missing descriptor name", text, 0)
    if not sep:
        if "=" in head:
            # Bare key=value lists (grid descriptors) have no name.
            return Descriptor(text=text, name="", groups=(_parse_group(text, text, 0),))
        return Descriptor(text=text, name=name, groups=())
    if not body.strip():
        raise DescriptorError("empty descriptor body", text, len(head) + 1)

    groups = []
    offset = len(head) + 1
    for chunk in body.split(";"):
        groups.append(_parse_group(text, chunk, offset))
        offset += len(chunk) + 1
    return Descriptor(text=text, name=name, groups=tuple(groups))


def _parse_group(text: str, chunk: str, offset: int) -> tuple[Item, ...]:
    items = []
    for piece in chunk.split(","):
        stripped = piece.strip()
        lead = len(piece) - len(piece.lstrip())
        if not stripped:
            raise DescriptorError("empty item", text, offset + lead)
        key, eq, value = stripped.partition("=")
        if eq:
            key = key.strip()
            if not key:
                raise DescriptorError("missing key before '='", text, offset + lead)
            value_offset = offset + lead + stripped.index("=") + 1
            value = value.strip()
            if not value:
                raise DescriptorError(f"missing value for {key!r}", text, value_offset)
            items.append(Item(key=key, value=value, position=value_offset))
        else:
            items.append(Item(key=None, value=stripped, position=offset + lead))
        offset += len(piece) + 1
    return tuple(items)


def as_int(descriptor: Descriptor, item: Item, *, minimum: int | None = None) -> int:
    try:
        value = int(item.value)
    except ValueError:
        raise descriptor.fail(f"expected an integer, got {item.value!r}", item.position) from None
    if minimum is not None and value < minimum:
        raise descriptor.fail(f"expected an integer >= {minimum}, got {value}", item.position)
    return value


def as_float(descriptor: Descriptor, item: Item) -> float:
    value = _fraction_or_float(item.value)
    if value is None:
        raise descriptor.fail(f"expected a real number, got {item.value!r}", item.position)
    return value


def as_complex(descriptor: Descriptor, item: Item) -> complex:
    real = _fraction_or_float(item.value)
    if real is not None:
        return complex(real)
    try:
        return complex(item.value.replace(" ", "").replace("i", "j"))
    except ValueError:
        message = f"expected a complex number, got {item.value!r}"
        raise descriptor.fail(message, item.position) from None


def _fraction_or_float(text: str) -> float | None:
    """Parse ``0.5``, ``1e-3`` or a simple fraction such as ``1/2``."""
    numerator, slash, denominator = text.partition("/")
    try:
        if slash:
            return float(numerator) / float(denominator)
        return float(text)
    except (ValueError, ZeroDivisionError):
        return None


GRID_KEYS = {"J": "J", "nodes": "angular_nodes", "N": "truncation", "tol": "rel_tol"}


def parse_grid(text: str) -> dict[str, float | int]:
    """``J=<J>,nodes=<M>,N=<N>,tol=<tol>`` (any subset) as GridConfig field overrides."""
    d = parse(text)
    if d.name:
        raise d.fail("a grid descriptor is a bare key=value list", 0)
    items = d.keyed(d.single_group(), optional=tuple(GRID_KEYS))
    overrides: dict[str, float | int] = {}
    for key, item in items.items():
        if key == "tol":
            overrides[GRID_KEYS[key]] = as_float(d, item)
        else:
            overrides[GRID_KEYS[key]] = as_int(d, item, minimum=1)
    return overrides


def parse_point(text: str) -> complex:
    """A complex number such as ``0.5``, ``1/2``, ``0.3+0.4i`` or ``-0.2j``."""
    if not text or not text.strip():
        raise DescriptorError("empty point", text or "", 0)
    d = Descriptor(text=text, name="", groups=())
    return as_complex(d, Item(key=None, value=text.strip(), position=0))
