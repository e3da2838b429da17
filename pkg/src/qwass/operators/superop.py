"""Operator bases and matrix representations of superoperators."""

from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import null_space

from ..exceptions import ErgodicityError
from ..models import OperatorBasis, Superoperator, TraceConvention
from ..settings import KERNEL_RTOL

LinearMap = Callable[[np.ndarray], np.ndarray]


def _normalized(e: np.ndarray, convention: TraceConvention) -> np.ndarray:
    norm = np.sqrt(convention.trace(e.conj().T @ e).real)
    return e / norm


def hermitian_basis(dim: int, convention: TraceConvention = TraceConvention.STANDARD) -> OperatorBasis:
    """Orthonormal Hermitian basis of all dim x dim matrices, identity first.

    Order: identity, then symmetric and antisymmetric off-diagonal units for
    each pair i < j, then traceless diagonal elements.
    """
    elements = [_normalized(np.eye(dim, dtype=complex), convention)]
    labels = ["id"]
    for i in range(dim):
        for j in range(i + 1, dim):
            sym = np.zeros((dim, dim), dtype=complex)
            sym[i, j] = sym[j, i] = 1.0
            asym = np.zeros((dim, dim), dtype=complex)
            asym[i, j] = -1j
            asym[j, i] = 1j
            elements += [_normalized(sym, convention), _normalized(asym, convention)]
            labels += [f"x{i}{j}", f"y{i}{j}"]
    for level in range(1, dim):
        diag = np.zeros(dim, dtype=complex)
        diag[:level] = 1.0
        diag[level] = -level
        elements.append(_normalized(np.diag(diag), convention))
        labels.append(f"z{level}")
    return OperatorBasis(elements=elements, convention=convention, labels=labels)


def superop_matrix(linear_map: LinearMap, basis: OperatorBasis) -> np.ndarray:
    """Column l holds the coordinates of map(B_l)."""
    columns = [basis.coefficients(linear_map(e)) for e in basis.elements]
    return np.column_stack(columns)


def superop_build(linear_map: LinearMap, basis: OperatorBasis) -> Superoperator:
    return Superoperator(basis=basis, matrix=superop_matrix(linear_map, basis))


def restricted_pinv(matrix: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Inverse of the matrix on the orthogonal complement of the kernel columns."""
    if kernel.shape[1] == 0:
        return np.linalg.inv(matrix)
    complement = null_space(kernel.T)
    block = complement.T @ matrix @ complement
    return complement @ np.linalg.solve(block, complement.T)


def kernel_dimension(matrix: np.ndarray, rtol: float = KERNEL_RTOL) -> int:
    singular = np.linalg.svd(matrix, compute_uv=False)
    top = singular[0] if singular.size else 0.0
    if top == 0.0:
        return matrix.shape[0]
    return int(np.sum(singular < rtol * top))


def superop_build_and_pinv(
    linear_map: Optional[LinearMap],
    basis: OperatorBasis,
    kernel_vectors: Sequence[np.ndarray] = (),
    rtol: float = KERNEL_RTOL,
    matrix: Optional[np.ndarray] = None,
) -> Superoperator:
    """Matrix representation plus pseudo-inverse off the declared kernel.

    kernel_vectors are coordinate vectors in the basis. A ready matrix may be
    passed instead of a map.
    """
    m = superop_matrix(linear_map, basis) if matrix is None else np.asarray(matrix, dtype=float)
    declared = len(kernel_vectors)
    detected = kernel_dimension(m, rtol)
    if detected != declared:
        raise ErgodicityError(
            f"kernel dimension {detected} detected, {declared} declared",
            declared=declared,
            detected=detected,
        )
    kernel = np.column_stack(kernel_vectors) if declared else np.zeros((basis.size, 0))
    if declared:
        kernel, _ = np.linalg.qr(kernel)
    pinv = restricted_pinv(m, kernel)
    return Superoperator(basis=basis, matrix=m, pinv=pinv, kernel_dim=declared)
