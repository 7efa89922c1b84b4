"""Exception types shared across the package."""


class HopfDiagError(Exception):
    """Base class for all errors raised by hopfdiag."""


class OrderMismatchError(HopfDiagError, ValueError):
    """Two truncated series of different orders were combined."""


class BoundExceededError(HopfDiagError, ValueError):
    """An enumeration was requested beyond its configured size bound."""

    def __init__(self, what: str, value: int, bound: int):
        self.what = what
        self.value = value
        self.bound = bound
        super().__init__(f"{what}: {value} exceeds the configured bound {bound}")


class ParseError(HopfDiagError, ValueError):
    """Malformed text input; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")
