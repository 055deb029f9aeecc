"""Exception hierarchy for the latred library.

Every error raised by the reduction, detection and checking code derives
from :class:`LatticeError` so that callers (the CLI in particular) can map
failures to exit codes without parsing messages.
"""


class LatticeError(Exception):
    """Base class for all latred library errors."""


class SingularBasisError(LatticeError):
    """Raised when a basis has a (numerically) vanishing Gram-Schmidt vector."""

    def __init__(self, message: str, index: int | None = None) -> None:
        super().__init__(message)
        self.index = index


class NotPositiveDefiniteError(LatticeError):
    """Raised when a Cholesky pivot drops below the tolerance."""

    def __init__(self, message: str, index: int | None = None) -> None:
        super().__init__(message)
        self.index = index


class IndexOutOfRangeError(LatticeError, IndexError):
    """Raised when a column index does not address the basis."""


class InvalidDeltaError(LatticeError, ValueError):
    """Raised when the reduction parameter delta is outside its admissible range."""

    def __init__(self, message: str, delta: float) -> None:
        super().__init__(message)
        self.delta = delta


class IterationCapExceededError(LatticeError):
    """Raised when a sequential reduction runs past its iteration cap."""

    def __init__(self, message: str, cap: int) -> None:
        super().__init__(message)
        self.cap = cap


class NotEffectivelyReducedError(LatticeError):
    """Raised when full size reduction is requested on a basis that is not
    effectively LLL-reduced."""


class PreconditionFailedError(LatticeError):
    """Raised when an operation's documented precondition does not hold."""


class NotFullyReducedError(LatticeError):
    """Raised when zero-forcing detection is given a basis that is not fully
    size-reduced."""


class SearchTooLargeError(LatticeError):
    """Raised when exhaustive ML search would exceed the candidate limit."""

    def __init__(self, message: str, candidates: int) -> None:
        super().__init__(message)
        self.candidates = candidates


class UnsupportedOrderError(LatticeError, ValueError):
    """Raised for a QAM order that is not supported."""


class DimensionMismatchError(LatticeError, ValueError):
    """Raised when array shapes do not agree."""


class MatrixFormatError(LatticeError):
    """Raised when a matrix document cannot be parsed or validated."""
