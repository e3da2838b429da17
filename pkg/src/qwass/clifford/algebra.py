"""Clifford algebra of n fermionic modes in the Jordan-Wigner realization."""

from functools import reduce
from itertools import product
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..exceptions import ExpansionError, MatrixDomainError, SizeError
from ..models import OperatorBasis, OperatorVector, TraceConvention
from ..settings import EXPANSION_TOL

MAX_MODES = 6

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


def jordan_wigner_generator(j: int, n: int) -> np.ndarray:
    """Q_j = sigma_z^(j-1) (x) sigma_x (x) id^(n-j), j counted from 1."""
    factors = [SIGMA_Z] * (j - 1) + [SIGMA_X] + [ID2] * (n - j)
    return reduce(np.kron, factors)


class CliffordAlgebra(BaseModel):
    """Generators Q_1..Q_n and monomial basis Q^alpha in lexicographic alpha order."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int
    generators: list[np.ndarray]
    alphas: list[tuple[int, ...]]
    monomials: list[np.ndarray]
    basis: OperatorBasis

    @property
    def dim(self) -> int:
        return 2**self.n

    @property
    def degrees(self) -> np.ndarray:
        return np.array([sum(a) for a in self.alphas])

    @property
    def grading_signs(self) -> np.ndarray:
        return (-1.0) ** self.degrees

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def index(self, alpha: tuple[int, ...]) -> int:
        return self.alphas.index(tuple(alpha))

    def monomial(self, alpha: tuple[int, ...]) -> np.ndarray:
        return self.monomials[self.index(alpha)]

    def to_dict(self) -> dict:
        return {"n": self.n}

    # element-level helpers delegate to the module functions
    def grading(self, a: np.ndarray) -> np.ndarray:
        return grading(self, a)

    def expand(self, a: np.ndarray) -> np.ndarray:
        return expand(self, a)

    def synthesize(self, coeffs: np.ndarray) -> np.ndarray:
        return sum((c * q for c, q in zip(coeffs, self.monomials)), np.zeros((self.dim, self.dim), dtype=complex))


def build_clifford(n: int) -> CliffordAlgebra:
    """Build the algebra for 1 <= n <= 6 modes."""
    if not 1 <= n <= MAX_MODES:
        raise SizeError(f"number of modes must be in [1, {MAX_MODES}], got {n}")
    generators = [jordan_wigner_generator(j, n) for j in range(1, n + 1)]
    alphas = list(product((0, 1), repeat=n))
    dim = 2**n
    monomials = []
    for alpha in alphas:
        q = np.eye(dim, dtype=complex)
        for gen, power in zip(generators, alpha):
            if power:
                q = q @ gen
        monomials.append(q)
    labels = ["Q" + "".join(str(a) for a in alpha) for alpha in alphas]
    basis = OperatorBasis(elements=monomials, convention=TraceConvention.NORMALIZED, labels=labels)
    return CliffordAlgebra(n=n, generators=generators, alphas=alphas, monomials=monomials, basis=basis)


def car_residual(alg: CliffordAlgebra) -> float:
    """max |{Q_i, Q_j} - 2 delta_ij id|."""
    worst = 0.0
    eye = alg.identity
    for i, qi in enumerate(alg.generators):
        for j, qj in enumerate(alg.generators):
            target = 2.0 * eye if i == j else 0.0 * eye
            worst = max(worst, float(np.max(np.abs(qi @ qj + qj @ qi - target))))
    return worst


def expand(alg: CliffordAlgebra, a: np.ndarray, tol: float = EXPANSION_TOL) -> np.ndarray:
    """Complex coefficients c_alpha with A = sum c_alpha Q^alpha."""
    a = np.asarray(a, dtype=complex)
    coeffs = alg.basis.complex_coefficients(a)
    residual = float(np.max(np.abs(a - alg.synthesize(coeffs))))
    if residual > tol * max(1.0, float(np.max(np.abs(a)))):
        raise ExpansionError(f"operator is not in the Clifford algebra (residual {residual:.3e})", residual)
    return coeffs


def grading(alg: CliffordAlgebra, a: np.ndarray) -> np.ndarray:
    """Gamma(A): flip the sign of odd-degree coefficients."""
    return alg.synthesize(alg.grading_signs * expand(alg, a))


def derivative(alg: CliffordAlgebra, j: int, a: np.ndarray, graded: Optional[np.ndarray] = None) -> np.ndarray:
    """nabla_j(A) = (Q_j A - Gamma(A) Q_j) / 2 with j counted from 0."""
    q = alg.generators[j]
    ga = grading(alg, a) if graded is None else graded
    return 0.5 * (q @ a - ga @ q)


def adjoint_derivative(alg: CliffordAlgebra, j: int, a: np.ndarray) -> np.ndarray:
    """nabla_j*(A) = (Q_j A + Gamma(A) Q_j) / 2."""
    q = alg.generators[j]
    return 0.5 * (q @ a + grading(alg, a) @ q)


def gradient(alg: CliffordAlgebra, a: np.ndarray) -> OperatorVector:
    a = np.asarray(a, dtype=complex)
    ga = grading(alg, a)
    return OperatorVector(components=[derivative(alg, j, a, ga) for j in range(alg.n)])


def divergence(alg: CliffordAlgebra, vector: OperatorVector) -> np.ndarray:
    """div(A) = -sum_j nabla_j*(A_j)."""
    out = np.zeros((alg.dim, alg.dim), dtype=complex)
    for j, component in enumerate(vector.components):
        out = out - adjoint_derivative(alg, j, component)
    return out


def number_operator(alg: CliffordAlgebra, a: np.ndarray) -> np.ndarray:
    """N A = -div(grad A)."""
    return -divergence(alg, gradient(alg, a))


def semigroup_apply(alg: CliffordAlgebra, t: float, a: np.ndarray) -> np.ndarray:
    """P_t = exp(-t N), applied by damping each coefficient by exp(-t |alpha|)."""
    if t < 0:
        raise MatrixDomainError(f"semigroup time must be nonnegative, got {t}")
    return alg.synthesize(np.exp(-t * alg.degrees) * expand(alg, a))


def vector_inner(alg: CliffordAlgebra, x: OperatorVector, y: OperatorVector) -> float:
    """sum_j Re tau(X_j* Y_j)."""
    return float(sum(alg.basis.inner(a, b) for a, b in zip(x.components, y.components)))


def dirichlet_form(alg: CliffordAlgebra, a: np.ndarray, b: np.ndarray) -> float:
    return vector_inner(alg, gradient(alg, a), gradient(alg, b))


def plain_fermionic_generator(alg: CliffordAlgebra, a: np.ndarray) -> np.ndarray:
    """2 sum_j (Q_j A Q_j - A), the ungraded form."""
    out = np.zeros((alg.dim, alg.dim), dtype=complex)
    for q in alg.generators:
        out = out + 2.0 * (q @ a @ q - a)
    return out


def graded_fermionic_generator(alg: CliffordAlgebra, a: np.ndarray) -> np.ndarray:
    """2 sum_j (Q_j Gamma(A) Q_j - A); equals -4 N on the algebra."""
    ga = grading(alg, a)
    out = np.zeros((alg.dim, alg.dim), dtype=complex)
    for q in alg.generators:
        out = out + 2.0 * (q @ ga @ q - a)
    return out
