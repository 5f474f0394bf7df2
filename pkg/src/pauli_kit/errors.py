"""Exception types shared across the package."""


class PauliKitError(Exception):
    """Base class for all package-specific failures."""


class EigenSolverError(PauliKitError):
    """The dense eigensolver did not converge."""


class NotDiagonalizableError(PauliKitError):
    """Eigenvector matrix too ill-conditioned for spectral matrix functions."""


class LogUndefinedError(PauliKitError):
    """An eigenvalue sits on the branch cut (-inf, 0], so no principal log exists."""


class NotTracePreservingError(PauliKitError):
    """Superoperator lacks the trace-preserving block structure."""


class NotUnitalError(PauliKitError):
    """Operation requires a unital channel (vanishing translation vector)."""


class NotCompletelyPositiveError(PauliKitError):
    """Requested object only exists for completely positive channels."""


class SingularShiftError(PauliKitError):
    """T - I is numerically singular; the non-unital shift is undefined."""


class DomainError(PauliKitError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class NotInteriorOfSError(PauliKitError):
    """Distortion vector is not strictly inside the semigroup set."""


class NotUnistochasticRealizableError(PauliKitError):
    """No coupling unitary realizes this distortion spectrum."""


class NotUnitaryError(PauliKitError):
    """Matrix fails the unitarity check."""


class DegenerateSectionError(PauliKitError):
    """Cross-section vertices are collinear."""


class NotOnBoundaryError(PauliKitError):
    """Point does not saturate any product inequality."""


class FormatError(PauliKitError):
    """Structurally malformed channel JSON."""


class InvalidChannelError(PauliKitError):
    """Channel JSON parsed but the payload is not a usable channel."""
