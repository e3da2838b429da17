import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import AdmissibilityError, InvariantViolationError
from ..settings import HERMITIAN_TOL, SYMPLECTIC_TOL, TRACE_TOL


def symplectic_form(m: int) -> np.ndarray:
    """nu = block-diag of [[0, 1], [-1, 0]] over m modes."""
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(m), block)


def admissibility_check(sigma: np.ndarray, tol: float = SYMPLECTIC_TOL) -> None:
    """Raise AdmissibilityError unless Sigma > 0 and Sigma + i nu >= 0."""
    n = sigma.shape[0]
    if sigma.shape != (n, n) or n % 2:
        raise InvariantViolationError(f"covariance must be 2m x 2m, got {sigma.shape}")
    if np.max(np.abs(sigma - sigma.T)) > HERMITIAN_TOL * max(1.0, np.max(np.abs(sigma))):
        raise InvariantViolationError("covariance is not symmetric")
    lam_min = float(np.linalg.eigvalsh(sigma)[0])
    if lam_min <= 0:
        raise AdmissibilityError(f"covariance is not positive definite: eigenvalue {lam_min:.6g}", lam_min)
    quantum_min = float(np.linalg.eigvalsh(sigma + 1j * symplectic_form(n // 2))[0])
    if quantum_min < -tol:
        raise AdmissibilityError(
            f"Sigma + i*nu has eigenvalue {quantum_min:.6g} below -{tol:.1e}", quantum_min
        )


class GaussianState(BaseModel):
    """Gaussian phase-space state (mu, Sigma) on R^{2m}."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mu: np.ndarray
    Sigma: np.ndarray

    @field_validator("mu", "Sigma", mode="before")
    @classmethod
    def _coerce(cls, value):
        return np.array(value, dtype=float)

    @model_validator(mode="after")
    def _check(self):
        if self.mu.shape != (self.Sigma.shape[0],):
            raise InvariantViolationError(f"mean of shape {self.mu.shape} does not match covariance {self.Sigma.shape}")
        admissibility_check(self.Sigma)
        return self

    @property
    def m(self) -> int:
        return self.Sigma.shape[0] // 2

    @property
    def phase_dim(self) -> int:
        return self.Sigma.shape[0]

    def to_dict(self) -> dict:
        return {"mu": self.mu.tolist(), "Sigma": self.Sigma.tolist()}


class GaussianMixture(BaseModel):
    """Convex combination sum_i lambda_i X_i of Gaussian states."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    weights: list[float] = Field(min_length=1)
    components: list[GaussianState] = Field(min_length=1)

    @model_validator(mode="after")
    def _check(self):
        if len(self.weights) != len(self.components):
            raise InvariantViolationError("one weight per component is required")
        if any(w < 0 for w in self.weights):
            raise InvariantViolationError("mixture weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > TRACE_TOL:
            raise InvariantViolationError(f"mixture weights sum to {sum(self.weights):.15g}, expected 1")
        if len({c.m for c in self.components}) > 1:
            raise InvariantViolationError("all mixture components must have the same number of modes")
        return self


class GaussianTangent(BaseModel):
    """Tangent pair xi = (mu_dot, Sigma_dot)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mu_dot: np.ndarray
    Sigma_dot: np.ndarray

    @field_validator("mu_dot", "Sigma_dot", mode="before")
    @classmethod
    def _coerce(cls, value):
        return np.array(value, dtype=float)

    @model_validator(mode="after")
    def _check(self):
        n = self.Sigma_dot.shape[0]
        if self.Sigma_dot.shape != (n, n) or self.mu_dot.shape != (n,):
            raise InvariantViolationError("tangent shapes must be (2m,) and (2m, 2m)")
        if np.max(np.abs(self.Sigma_dot - self.Sigma_dot.T)) > HERMITIAN_TOL * max(1.0, np.max(np.abs(self.Sigma_dot))):
            raise InvariantViolationError("covariance tangent is not symmetric")
        return self
