"""Exception hierarchy shared by all symchain modules."""


class SymchainError(Exception):
    """Base class for all library errors."""


class RingMismatchError(SymchainError):
    """Operands belong to different coefficient rings."""


class UnsupportedRingError(SymchainError):
    """The operation is not defined over the given ring."""


class NonUnitError(SymchainError):
    """Inversion of a non-unit was requested."""


class TwoNotUnitError(UnsupportedRingError):
    """The operation requires 2 to be invertible in the ring."""


class ShapeError(SymchainError):
    """Matrix or complex dimensions are incompatible."""


class GradingError(SymchainError):
    """Internal grading is missing, forbidden, or inconsistent."""


class ScalarParseError(SymchainError, ValueError):
    """A scalar string does not match the textual grammar.

    Carries the offending position so callers can point at the token.
    """

    def __init__(self, message, text=None, pos=None):
        if text is not None and pos is not None:
            message = f"{message} (at position {pos} in {text!r})"
        super().__init__(message)
        self.text = text
        self.pos = pos


class DocumentError(SymchainError):
    """A serialized document is malformed or fails validation."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class LinearSolveError(SymchainError):
    """An exact linear system has no solution over the ring."""
