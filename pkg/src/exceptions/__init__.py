from .graph_exceptions import (
    AlphaTooLargeError,
    BadParametersError,
    BaseGraphError,
    CertificateError,
    ConstructionExhaustedError,
    GuardFailedError,
    HypothesisViolationError,
    InsufficientSizeError,
    MalformedInputError,
    NotFoundError,
    NotTriangleFreeError,
    OutOfRangeError,
    PotentialCounterexampleError,
    TooLargeError,
)

__all__ = [
    "AlphaTooLargeError",
    "BadParametersError",
    "BaseGraphError",
    "CertificateError",
    "ConstructionExhaustedError",
    "GuardFailedError",
    "HypothesisViolationError",
    "InsufficientSizeError",
    "MalformedInputError",
    "NotFoundError",
    "NotTriangleFreeError",
    "OutOfRangeError",
    "PotentialCounterexampleError",
    "TooLargeError",
]
