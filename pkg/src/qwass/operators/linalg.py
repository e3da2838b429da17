"""Spectral linear algebra on dense Hermitian matrices."""

from typing import Union

import numpy as np

from ..exceptions import InvariantViolationError, MatrixDomainError
from ..models import DensityOperator, HermitianOperator, Spectrum, TraceConvention
from ..models.operators import hermiticity_residual
from ..settings import COINCIDENCE_RTOL, HERMITIAN_TOL

OperatorLike = Union[HermitianOperator, DensityOperator, np.ndarray]

MATRIX_FUNCTIONS = ("log", "exp", "pow", "scale")


def as_array(a: OperatorLike) -> np.ndarray:
    """Dense complex matrix behind an operator-like value."""
    if isinstance(a, DensityOperator):
        return a.matrix
    if isinstance(a, HermitianOperator):
        return a.matrix
    return np.asarray(a, dtype=complex)


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def trace(a: OperatorLike, convention: TraceConvention = TraceConvention.STANDARD) -> complex:
    return convention.trace(as_array(a))


def inner(a: OperatorLike, b: OperatorLike, convention: TraceConvention = TraceConvention.STANDARD) -> float:
    """Real inner product Re tr_conv(A* B)."""
    return float(convention.trace(as_array(a).conj().T @ as_array(b)).real)


def trace_norm(a: OperatorLike) -> float:
    return float(np.sum(np.linalg.svd(as_array(a), compute_uv=False)))


def operator_norm(a: OperatorLike) -> float:
    return float(np.linalg.norm(as_array(a), 2))


def eigh(h: OperatorLike, tol: float = HERMITIAN_TOL) -> Spectrum:
    """Ascending eigenvalues and unitary eigenvectors of a Hermitian matrix."""
    matrix = as_array(h)
    residual = hermiticity_residual(matrix)
    if residual > tol:
        raise InvariantViolationError(f"eigh needs a Hermitian matrix (relative residual {residual:.3e})")
    values, vectors = np.linalg.eigh(hermitian_part(matrix))
    return Spectrum(values=values, vectors=vectors)


def _apply_scalar(values: np.ndarray, f: str, s: float) -> np.ndarray:
    if f == "log":
        bad = values[values <= 0]
        if bad.size:
            raise MatrixDomainError(f"log of operator with eigenvalue {bad[0]:.6g}", float(bad[0]))
        return np.log(values)
    if f == "exp":
        return np.exp(s * values)
    if f == "pow":
        if float(s).is_integer():
            if s < 0 and np.any(values == 0):
                raise MatrixDomainError("negative power of a singular operator", 0.0)
            return values ** int(s)
        bad = values[values <= 0]
        if bad.size:
            raise MatrixDomainError(f"fractional power {s} of operator with eigenvalue {bad[0]:.6g}", float(bad[0]))
        return values**s
    if f == "scale":
        return s * values
    raise ValueError(f"unknown matrix function '{f}', expected one of {MATRIX_FUNCTIONS}")


def matrix_function(h: Union[OperatorLike, Spectrum], f: str, s: float = 1.0) -> HermitianOperator:
    """Apply f to the eigenvalues of H in its own eigenbasis.

    f is one of "log", "exp" (of s*H), "pow" (H**s) or "scale" (s*H).
    """
    spectrum = h if isinstance(h, Spectrum) else eigh(h)
    values = _apply_scalar(spectrum.values, f, s)
    u = spectrum.vectors
    return HermitianOperator(matrix=hermitian_part((u * values) @ u.conj().T))


def log_mean(a: np.ndarray, b: np.ndarray, rtol: float = COINCIDENCE_RTOL) -> np.ndarray:
    """Logarithmic mean (a - b) / (ln a - ln b), elementwise, for a, b >= 0."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    out = np.zeros(a.shape)
    top = np.maximum(a, b)
    close = np.abs(a - b) <= rtol * top
    positive = (a > 0) & (b > 0)
    out[close] = 0.5 * (a[close] + b[close])
    generic = positive & ~close
    out[generic] = (a[generic] - b[generic]) / (np.log(a[generic]) - np.log(b[generic]))
    # a zero argument gives a zero mean
    return out


def inverse_log_mean(a: np.ndarray, b: np.ndarray, rtol: float = COINCIDENCE_RTOL) -> np.ndarray:
    """(ln a - ln b) / (a - b), with 1/a at coincidence; a, b > 0."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    out = np.empty(a.shape)
    close = np.abs(a - b) <= rtol * np.maximum(a, b)
    out[close] = 2.0 / (a[close] + b[close])
    far = ~close
    out[far] = (np.log(a[far]) - np.log(b[far])) / (a[far] - b[far])
    return out


def double_operator_apply(left: Spectrum, right: Spectrum, t: np.ndarray, multiplier: np.ndarray) -> np.ndarray:
    """U1 (M o (U1* T U2)) U2* for the eigenbases of the left and right factors."""
    u1, u2 = left.vectors, right.vectors
    return u1 @ (multiplier * (u1.conj().T @ t @ u2)) @ u2.conj().T
