"""Exception hierarchy shared by the whole package."""


class HopfbenchError(Exception):
    """Base class for all package errors."""


class NotAGroup(HopfbenchError):
    """Multiplication table violates a group axiom; the message names the
    first violated axiom."""

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"{axiom}" + (f": {detail}" if detail else ""))


class NotAPermutation(HopfbenchError):
    pass


class OrderLimitExceeded(HopfbenchError):
    pass


class NotNormal(HopfbenchError):
    pass


class DomainMismatch(HopfbenchError):
    pass


class NotAbelian(HopfbenchError):
    pass


class NotPerfect(HopfbenchError):
    pass


class NotFound(HopfbenchError):
    """An object guaranteed to exist was not found; signals a bug."""


class NotSurjective(HopfbenchError):
    pass


class NotCommutative(HopfbenchError):
    pass


class NonComposable(HopfbenchError):
    pass


class InvalidCocycle(HopfbenchError):
    pass


class InvariantViolated(HopfbenchError):
    pass


class ShapeMismatch(HopfbenchError):
    pass


class BadSection(HopfbenchError):
    pass


class ParseError(HopfbenchError):
    """Parse failure with a position attached."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class Unsupported(HopfbenchError):
    pass
