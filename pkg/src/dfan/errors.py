"""Exception hierarchy shared across the package."""


class DfanError(Exception):
    """Base class for all package errors."""


class RingMismatchError(DfanError):
    """Operands live over different ring descriptors."""


class ZeroInputError(DfanError):
    """An operation that needs a nonzero element received zero."""


class HomogeneityError(DfanError):
    """An element expected to be homogeneous is not."""


class WeightError(DfanError):
    """A weight form violates its sign constraints or context."""


class ConeError(DfanError):
    """A cone is not basic / rays are invalid."""


class ResourceBoundExceeded(DfanError):
    """A configured degree/step/cone-count cap was hit; the verdict is
    explicitly inconclusive rather than silently wrong."""


class GradingError(DfanError):
    """A graded element violates its degree constraint."""


class CertificateError(DfanError):
    """A flatness certificate could not be produced or verified."""


class SyntaxErrorWithPos(DfanError):
    """Parse error carrying a line/column position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class SemanticError(DfanError):
    """Well-formed input that violates a semantic constraint."""
