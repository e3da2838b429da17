"""Error types raised across qwass."""

from typing import Any, Optional


class QwassError(Exception):
    """Base class for qwass errors."""


class InvariantViolationError(QwassError):
    """Input breaks a structural invariant (Hermiticity, trace, Gram matrix).

    Raised from pydantic validators, so it must not derive from ValueError:
    pydantic would wrap it in a ValidationError.
    """


class MatrixDomainError(QwassError, ValueError):
    """Matrix function or solve requested outside its domain."""

    def __init__(self, message: str, eigenvalue: Optional[float] = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class FaithfulnessError(QwassError, ValueError):
    """State is not faithful where an inverse multiplication is needed."""

    def __init__(
        self,
        message: str,
        min_eigenvalue: Optional[float] = None,
        step_index: Optional[int] = None,
    ):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue
        self.step_index = step_index


class SizeError(QwassError, ValueError):
    """Requested size is outside the supported range."""


class ExpansionError(QwassError, ValueError):
    """Operator does not lie in the span of the basis."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class ErgodicityError(QwassError, RuntimeError):
    """Detected kernel dimension differs from the declared one."""

    def __init__(self, message: str, declared: int, detected: int):
        super().__init__(message)
        self.declared = declared
        self.detected = detected


class PreconditionError(QwassError, ValueError):
    """Input fails a stated precondition (e.g. a non-traceless score target)."""


class DomainExitError(QwassError, RuntimeError):
    """Parameter left the model domain."""

    def __init__(self, message: str, last_valid: Any = None, step_index: Optional[int] = None):
        super().__init__(message)
        self.last_valid = last_valid
        self.step_index = step_index


class AdmissibilityError(QwassError):
    """Gaussian covariance violates positivity or the uncertainty constraint."""

    def __init__(self, message: str, eigenvalue: Optional[float] = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class GeneratorValidationError(QwassError, ValueError):
    """Lindblad generator fails detailed-balance validation."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report
