"""Exception types shared across the package."""


class HitForgeError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(HitForgeError):
    """Operands live in polynomial rings with different variable counts."""


class ExponentOverflowError(HitForgeError):
    """An exponent left the supported fixed-width range (< 2**63)."""


class ParseError(HitForgeError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NoSpikeError(HitForgeError):
    """No spike of the requested degree exists in k variables (mu(n) > k)."""


class InvariantViolationError(HitForgeError):
    """An internal invariant failed; indicates a bug, not bad input."""
