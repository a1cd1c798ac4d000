"""Exception hierarchy."""


class HilbertLabError(Exception):
    """Base class for every error raised by the library."""


class TruncationError(HilbertLabError):
    """Evaluation outside the region where a truncated series can be trusted."""


class MeasureError(HilbertLabError, ValueError):
    """Invalid measure construction."""


class QuadratureError(HilbertLabError):
    """A refinement loop ran out of budget before meeting its tolerance.

    Carries the last two estimates so callers can report a partial value.
    """

    def __init__(self, message: str, previous, current) -> None:
        super().__init__(f"{message} (last estimates: {previous!r}, {current!r})")
        self.previous = previous
        self.current = current

    @property
    def partial(self):
        return self.current


class DescriptorError(HilbertLabError, ValueError):
    """Parse failure in one of the text mini-languages."""

    def __init__(self, message: str, text: str, position: int) -> None:
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")
        self.text = text
        self.position = position
