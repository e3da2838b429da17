from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import ExpansionError, InvariantViolationError
from ..settings import (
    BASIS_GRAM_TOL,
    EXPANSION_TOL,
    FAITHFUL_EPS,
    HERMITIAN_TOL,
    POSITIVITY_TOL,
    TRACE_TOL,
)


class TraceConvention(str, Enum):
    """Which trace functional the operator lives under."""

    NORMALIZED = "normalized"  # tau = tr / dim
    STANDARD = "standard"

    def trace(self, matrix: np.ndarray) -> complex:
        """Trace of a square matrix under this convention."""
        value = np.trace(matrix)
        if self is TraceConvention.NORMALIZED:
            return value / matrix.shape[0]
        return value

    def identity(self, dim: int) -> np.ndarray:
        """The operator of unit trace proportional to the identity."""
        eye = np.eye(dim, dtype=complex)
        if self is TraceConvention.NORMALIZED:
            return eye
        return eye / dim


def _as_square(value) -> np.ndarray:
    matrix = np.asarray(value, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise InvariantViolationError(f"expected a non-empty square matrix, got shape {matrix.shape}")
    return matrix


def hermiticity_residual(matrix: np.ndarray) -> float:
    """Max-norm of A - A* relative to the max-norm of A."""
    scale = max(float(np.max(np.abs(matrix))), 1.0)
    return float(np.max(np.abs(matrix - matrix.conj().T))) / scale


class HermitianOperator(BaseModel):
    """Dense self-adjoint matrix."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    matrix: np.ndarray
    tol: float = Field(default=HERMITIAN_TOL, gt=0, exclude=True)

    @field_validator("matrix", mode="before")
    @classmethod
    def _coerce(cls, value):
        return _as_square(value)

    @model_validator(mode="after")
    def _check_hermitian(self):
        residual = hermiticity_residual(self.matrix)
        if residual > self.tol:
            raise InvariantViolationError(
                f"operator is not Hermitian: relative residual {residual:.3e} > {self.tol:.1e}"
            )
        return self

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_dict(self) -> dict:
        """JSON form {dim, re, im}."""
        return {
            "dim": self.dim,
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HermitianOperator":
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
        if re.shape != (data["dim"], data["dim"]) or im.shape != re.shape:
            raise InvariantViolationError(f"operator JSON shape mismatch for dim={data['dim']}")
        return cls(matrix=re + 1j * im)


class DensityOperator(BaseModel):
    """Positive semidefinite operator of fixed trace.

    `mass` is the trace under the chosen convention; it is 1 for states and
    may be set otherwise for models whose states carry a different total trace.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    op: HermitianOperator
    trace_convention: TraceConvention = TraceConvention.NORMALIZED
    mass: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _check_state(self):
        tr = self.trace_convention.trace(self.op.matrix)
        if abs(tr - self.mass) > TRACE_TOL * max(1.0, self.mass):
            raise InvariantViolationError(
                f"trace {tr.real:.15g} differs from {self.mass} under {self.trace_convention.value} convention"
            )
        if self.min_eigenvalue < -POSITIVITY_TOL:
            raise InvariantViolationError(f"negative eigenvalue {self.min_eigenvalue:.3e}")
        return self

    @classmethod
    def from_matrix(
        cls,
        matrix,
        convention: TraceConvention = TraceConvention.NORMALIZED,
        mass: float = 1.0,
    ) -> "DensityOperator":
        return cls(op=HermitianOperator(matrix=matrix), trace_convention=convention, mass=mass)

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @property
    def dim(self) -> int:
        return self.op.dim

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.op.matrix)

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    def is_faithful(self, eps: float = FAITHFUL_EPS) -> bool:
        return self.min_eigenvalue >= eps


class Spectrum(BaseModel):
    """Eigen-decomposition H = U diag(values) U*."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


class OperatorBasis(BaseModel):
    """Basis orthonormal under Re tr_conv(A* B), element 0 proportional to the identity.

    Elements need not be Hermitian (Clifford monomials of degree 2 mod 4 are
    anti-Hermitian); coordinates are always real.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    elements: list[np.ndarray]
    convention: TraceConvention = TraceConvention.STANDARD
    labels: Optional[list[str]] = None

    @model_validator(mode="after")
    def _check_gram(self):
        if not self.elements:
            raise InvariantViolationError("basis must not be empty")
        dim = self.elements[0].shape[0]
        if any(e.shape != (dim, dim) for e in self.elements):
            raise InvariantViolationError("basis elements must share one square shape")
        gram = self.gram()
        err = float(np.max(np.abs(gram - np.eye(len(self.elements)))))
        if err > BASIS_GRAM_TOL:
            raise InvariantViolationError(f"basis Gram matrix deviates from identity by {err:.3e}")
        first = self.elements[0]
        if np.max(np.abs(first - first[0, 0] * np.eye(dim))) > BASIS_GRAM_TOL:
            raise InvariantViolationError("basis element 0 must be proportional to the identity")
        return self

    @property
    def size(self) -> int:
        """Number of basis elements."""
        return len(self.elements)

    @property
    def matrix_dim(self) -> int:
        return self.elements[0].shape[0]

    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(self.convention.trace(a.conj().T @ b).real)

    def gram(self) -> np.ndarray:
        n = len(self.elements)
        gram = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                gram[i, j] = self.inner(self.elements[i], self.elements[j])
        return gram

    def complex_coefficients(self, a: np.ndarray) -> np.ndarray:
        """Coefficients tr_conv(B_k* A) without dropping imaginary parts."""
        return np.array([self.convention.trace(e.conj().T @ a) for e in self.elements])

    def coefficients(self, a: np.ndarray, tol: float = EXPANSION_TOL) -> np.ndarray:
        """Real coordinates of A; raises if A is outside the real span."""
        coeffs = self.complex_coefficients(a)
        residual = float(np.max(np.abs(a - self.synthesize(coeffs)))) if a.size else 0.0
        residual = max(residual, float(np.max(np.abs(coeffs.imag))))
        scale = max(1.0, float(np.max(np.abs(a))))
        if residual > tol * scale:
            raise ExpansionError(f"operator lies outside the basis span (residual {residual:.3e})", residual)
        return coeffs.real.copy()

    def synthesize(self, coeffs: np.ndarray) -> np.ndarray:
        out = np.zeros((self.matrix_dim, self.matrix_dim), dtype=complex)
        for c, e in zip(coeffs, self.elements):
            out = out + c * e
        return out

    def identity_direction(self) -> np.ndarray:
        """Coordinate vector of the kernel direction span{id}."""
        v = np.zeros(self.size)
        v[0] = 1.0
        return v


class Superoperator(BaseModel):
    """Real matrix of a linear map in an orthonormal operator basis."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    basis: OperatorBasis
    matrix: np.ndarray
    pinv: Optional[np.ndarray] = None
    kernel_dim: int = 0

    @field_validator("matrix", mode="before")
    @classmethod
    def _coerce(cls, value):
        return np.asarray(value, dtype=float)

    @model_validator(mode="after")
    def _check_shape(self):
        n = self.basis.size
        if self.matrix.shape != (n, n):
            raise InvariantViolationError(f"superoperator must be {n}x{n}, got {self.matrix.shape}")
        return self

    def apply(self, a: np.ndarray) -> np.ndarray:
        return self.basis.synthesize(self.matrix @ self.basis.coefficients(a))

    def apply_pinv(self, a: np.ndarray) -> np.ndarray:
        if self.pinv is None:
            raise InvariantViolationError("pseudo-inverse was not assembled for this superoperator")
        return self.basis.synthesize(self.pinv @ self.basis.coefficients(a))

    @property
    def is_symmetric(self) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.T, atol=1e-10 * max(1.0, np.max(np.abs(self.matrix)))))


class OperatorVector(BaseModel):
    """Tuple (A_1, ..., A_n) of operators of a common size."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    components: list[np.ndarray]

    @model_validator(mode="after")
    def _check_dims(self):
        shapes = {c.shape for c in self.components}
        if len(shapes) > 1:
            raise InvariantViolationError(f"components have mixed shapes {sorted(shapes)}")
        return self

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, j: int) -> np.ndarray:
        return self.components[j]
