from typing import Any


class BaseGraphError(Exception):
    """Base exception for all graph and certificate errors."""

    def __init__(self, message: str, details: Any = None):
        self.message = message
        self.details = details
        super().__init__(self.message)


class OutOfRangeError(BaseGraphError):
    """Exception raised when a vertex label is outside 0..n-1."""

    pass


class TooLargeError(BaseGraphError):
    """Exception raised when an input exceeds a configured solver limit."""

    pass


class MalformedInputError(BaseGraphError):
    """Exception raised for unreadable graph6, edge-list or certificate input."""

    def __init__(self, message: str, offset: int | None = None, details: Any = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message, details)


class NotTriangleFreeError(BaseGraphError):
    """Exception raised when a Ramsey extraction is asked of a graph with a triangle."""

    pass


class NotFoundError(BaseGraphError):
    """Exception raised when a requested vertex set does not exist."""

    pass


class InsufficientSizeError(NotFoundError):
    """The graph is below the Ramsey bound and exhaustive search found nothing."""

    pass


class AlphaTooLargeError(BaseGraphError):
    """Exception raised when a graph has independence number three or more."""

    pass


class BadParametersError(BaseGraphError):
    """Exception raised for invalid construction parameters."""

    pass


class HypothesisViolationError(BaseGraphError):
    """Exception raised when a split request does not meet the theorem's hypotheses."""

    pass


class GuardFailedError(BaseGraphError):
    """A cascade construction's preconditions do not hold on this instance."""

    pass


class ConstructionExhaustedError(BaseGraphError):
    """Every proof-derived candidate failed verification."""

    pass


class PotentialCounterexampleError(BaseGraphError):
    """No valid partition exists although the hypotheses hold."""

    def __init__(self, message: str, graph6: str, s: int, t: int, details: Any = None):
        self.graph6 = graph6
        self.s = s
        self.t = t
        super().__init__(message, details)


class CertificateError(BaseGraphError):
    """Exception raised when a certificate document cannot be checked."""

    pass
