"""Gradient structures, weighted multiplication operators and the transport Laplacian."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..clifford import CliffordAlgebra
from ..exceptions import PreconditionError
from ..models import (
    DensityOperator,
    LindbladGenerator,
    OperatorBasis,
    OperatorVector,
    Spectrum,
    Superoperator,
    TraceConvention,
)
from ..operators import (
    as_array,
    double_operator_apply,
    eigh,
    log_mean,
    matrix_function,
    superop_build_and_pinv,
    superop_matrix,
)
from ..operators.multiplication import require_faithful
from ..settings import FAITHFUL_EPS, KERNEL_RTOL
from .generators import fermionic_generator, generator_basis


class Multiplication(str, Enum):
    """How a state multiplies gradients."""

    KUBO_MORI = "kubo-mori"
    ANTICOMMUTATOR = "anticommutator"


class DifferentialStructure(BaseModel):
    """Derivatives nabla_j A = V_j A - l(A) V_j of a generator plus a multiplication rule."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    generator: LindbladGenerator
    multiplication: Multiplication = Multiplication.KUBO_MORI
    basis: OperatorBasis
    name: str = "structure"

    @property
    def n_terms(self) -> int:
        return len(self.generator.terms)

    @property
    def convention(self):
        return self.basis.convention

    def derivative(self, j: int, a: np.ndarray) -> np.ndarray:
        v = self.generator.terms[j].V
        return v @ a - self.generator.left_action(a) @ v

    def adjoint_derivative(self, j: int, b: np.ndarray) -> np.ndarray:
        """Adjoint of nabla_j under Re tr(A* B): V_j* B - l(B V_j*)."""
        vd = self.generator.terms[j].V.conj().T
        return vd @ b - self.generator.left_action(b @ vd)

    def gradient(self, a: np.ndarray) -> OperatorVector:
        a = np.asarray(a, dtype=complex)
        return OperatorVector(components=[self.derivative(j, a) for j in range(self.n_terms)])

    def divergence(self, vector: OperatorVector) -> np.ndarray:
        out = np.zeros((self.basis.matrix_dim,) * 2, dtype=complex)
        for j, component in enumerate(vector.components):
            out = out - self.adjoint_derivative(j, component)
        return out

    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        return self.basis.inner(a, b)

    def prepare(self, rho, eps: Optional[float] = None) -> "PreparedState":
        return PreparedState.build(self, rho, eps)


def fermionic_structure(
    alg: CliffordAlgebra, multiplication: Multiplication = Multiplication.KUBO_MORI
) -> DifferentialStructure:
    """Fermionic Fokker-Planck calculus on the Clifford algebra."""
    return DifferentialStructure(
        generator=fermionic_generator(alg, coupling=0.5),
        multiplication=Multiplication(multiplication),
        basis=alg.basis,
        name=f"fermionic-n{alg.n}-{Multiplication(multiplication).value}",
    )


def lindblad_structure(
    gen: LindbladGenerator, multiplication: Multiplication = Multiplication.KUBO_MORI
) -> DifferentialStructure:
    return DifferentialStructure(
        generator=gen,
        multiplication=Multiplication(multiplication),
        basis=generator_basis(gen),
        name=f"{gen.name}-{Multiplication(multiplication).value}",
    )


def _weighted_multiplier(left: Spectrum, right: Spectrum, omega: float) -> np.ndarray:
    a = np.exp(omega / 2.0) * left.values[:, None]
    b = np.exp(-omega / 2.0) * right.values[None, :]
    return log_mean(a, b)


def weighted_fkm_apply(
    gen: LindbladGenerator,
    j: int,
    rho,
    c: np.ndarray,
    eps: float = FAITHFUL_EPS,
) -> np.ndarray:
    """rho_hat_j # C: int_0^1 (e^{w/2} l(rho))^(1-s) C (e^{-w/2} rho)^s ds with w = omega_j.

    The weight e^{omega_j/2} sits on the left factor so that
    rho_hat_j # nabla_j(log rho - log sigma) = e^{-omega_j/2} V_j rho - e^{omega_j/2} l(rho) V_j.
    """
    r = as_array(rho)
    right = eigh(r)
    require_faithful(right, eps)
    left = eigh(gen.left_action(r)) if gen.graded else right
    omega = gen.terms[j].omega
    return double_operator_apply(left, right, np.asarray(c, dtype=complex), _weighted_multiplier(left, right, omega))


class PreparedState:
    """A state with the spectral data each multiplication needs, computed once."""

    def __init__(self, structure: DifferentialStructure, matrix: np.ndarray, right: Spectrum, left: Spectrum):
        self.structure = structure
        self.matrix = matrix
        self.right = right
        self.left = left
        self._multipliers: dict[int, np.ndarray] = {}

    @classmethod
    def build(cls, structure: DifferentialStructure, rho, eps: Optional[float] = None) -> "PreparedState":
        matrix = as_array(rho)
        right = eigh(matrix)
        require_faithful(right, FAITHFUL_EPS if eps is None else eps)
        gen = structure.generator
        left = eigh(gen.left_action(matrix)) if gen.graded else right
        if structure.multiplication is Multiplication.ANTICOMMUTATOR:
            if any(t.omega != 0 for t in gen.terms):
                raise PreconditionError("anticommutator multiplication needs zero Bohr frequencies")
        return cls(structure, matrix, right, left)

    def multiply(self, j: int, c: np.ndarray) -> np.ndarray:
        """L_rho^(j)(C)."""
        if self.structure.multiplication is Multiplication.ANTICOMMUTATOR:
            return 0.5 * (c @ self.matrix + self.matrix @ c)
        if j not in self._multipliers:
            omega = self.structure.generator.terms[j].omega
            self._multipliers[j] = _weighted_multiplier(self.left, self.right, omega)
        return double_operator_apply(self.left, self.right, c, self._multipliers[j])

    def laplacian_apply(self, a: np.ndarray) -> np.ndarray:
        """-Delta_rho(A) = sum_j nabla_j^dagger L_rho^(j) nabla_j A."""
        s = self.structure
        a = np.asarray(a, dtype=complex)
        out = np.zeros_like(a)
        for j in range(s.n_terms):
            out = out + s.adjoint_derivative(j, self.multiply(j, s.derivative(j, a)))
        return out

    def metric(self, a: np.ndarray, b: np.ndarray) -> float:
        """sum_j <nabla_j A, L_rho^(j) nabla_j B>."""
        s = self.structure
        total = 0.0
        for j in range(s.n_terms):
            total += s.inner(s.derivative(j, a), self.multiply(j, s.derivative(j, b)))
        return total


class TransportLaplacian(BaseModel):
    """-Delta_rho assembled as a symmetric matrix with its pseudo-inverse off span{id}."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    rho: np.ndarray
    structure: DifferentialStructure
    superop: Superoperator

    @property
    def matrix(self) -> np.ndarray:
        return self.superop.matrix

    @property
    def pinv(self) -> np.ndarray:
        return self.superop.pinv

    @property
    def basis(self) -> OperatorBasis:
        return self.superop.basis

    def apply(self, a: np.ndarray) -> np.ndarray:
        return self.superop.apply(a)

    def solve(self, x: np.ndarray) -> np.ndarray:
        return self.superop.apply_pinv(x)

    def restricted_block(self) -> np.ndarray:
        """Matrix on span{id}^perp in the basis order (element 0 dropped)."""
        return self.matrix[1:, 1:]


def laplacian_apply(structure: DifferentialStructure, rho, a: np.ndarray) -> np.ndarray:
    """-Delta_rho(A) applied directly."""
    return structure.prepare(rho).laplacian_apply(a)


def laplacian_build(
    rho,
    structure: DifferentialStructure,
    rtol: float = KERNEL_RTOL,
    eps: Optional[float] = None,
) -> TransportLaplacian:
    """Assemble -Delta_rho column by column over the structure basis.

    Raises ErgodicityError unless the kernel is exactly span{id}.
    """
    prepared = structure.prepare(rho, eps)
    raw = superop_matrix(prepared.laplacian_apply, structure.basis)
    superop = superop_build_and_pinv(
        None,
        structure.basis,
        kernel_vectors=[structure.basis.identity_direction()],
        rtol=rtol,
        matrix=0.5 * (raw + raw.T),
    )
    return TransportLaplacian(rho=prepared.matrix, structure=structure, superop=superop)


def _log_difference(rho, sigma) -> np.ndarray:
    return matrix_function(as_array(rho), "log").matrix - matrix_function(as_array(sigma), "log").matrix


def relative_entropy(rho: DensityOperator, sigma: DensityOperator) -> float:
    """S_sigma(rho) = tr_conv(rho (log rho - log sigma))."""
    convention = rho.trace_convention
    spectrum = eigh(rho.matrix)
    lam = np.clip(spectrum.values, 0.0, None)
    positive = lam > 0
    entropy_part = float(np.sum(lam[positive] * np.log(lam[positive])))
    if convention is TraceConvention.NORMALIZED:
        entropy_part /= rho.dim
    log_sigma = matrix_function(sigma.matrix, "log").matrix
    cross = float(convention.trace(rho.matrix @ log_sigma).real)
    return entropy_part - cross


def fisher_information(rho, sigma, structure: DifferentialStructure) -> float:
    """I(rho) = sum_j <nabla_j psi, L_rho^(j) nabla_j psi>, psi = log rho - log sigma."""
    psi = _log_difference(rho, sigma)
    prepared = structure.prepare(rho)
    return prepared.metric(psi, psi)


def kms_inner(a: np.ndarray, b: np.ndarray, sigma: DensityOperator) -> float:
    """Re tr_conv(sigma^1/2 A* sigma^1/2 B)."""
    root = matrix_function(sigma.matrix, "pow", 0.5).matrix
    return float(sigma.trace_convention.trace(root @ np.asarray(a).conj().T @ root @ np.asarray(b)).real)


def dirichlet_form(structure: DifferentialStructure, a: np.ndarray, b: np.ndarray) -> float:
    """sum_j <nabla_j A, nabla_j B>_KMS."""
    sigma = structure.generator.sigma
    return float(
        sum(kms_inner(structure.derivative(j, a), structure.derivative(j, b), sigma) for j in range(structure.n_terms))
    )
