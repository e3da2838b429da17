"""Detailed-balance Lindblad generators: construction, validation and application."""

from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import expm

from ..clifford import CliffordAlgebra
from ..exceptions import GeneratorValidationError, MatrixDomainError
from ..models import (
    DensityOperator,
    GeneratorReport,
    JumpTerm,
    LindbladGenerator,
    OperatorBasis,
    TraceConvention,
)
from ..operators import hermitian_basis, superop_matrix
from ..settings import FAITHFUL_EPS, HERMITIAN_TOL, MODULAR_TOL


class Picture(str, Enum):
    HEISENBERG = "heisenberg"
    SCHROEDINGER = "schroedinger"


def fermionic_generator(alg: CliffordAlgebra, coupling: float = 0.5) -> LindbladGenerator:
    """Graded generator with V_j = coupling * Q_j, omega_j = 0 and sigma = id.

    coupling = 1/2 reproduces the derivatives (Q_j A - Gamma(A) Q_j)/2 and the
    generator -N; coupling = 1 gives 2 sum_j (Q_j Gamma(A) Q_j - A) = -4N.
    """
    sigma = DensityOperator.from_matrix(alg.identity, TraceConvention.NORMALIZED)
    terms = [JumpTerm(V=coupling * q, omega=0.0, adjoint=j) for j, q in enumerate(alg.generators)]
    return LindbladGenerator(
        sigma=sigma,
        terms=terms,
        grading=alg.grading,
        basis=alg.basis,
        name=f"fermionic-n{alg.n}",
    )


def detailed_balance_generator(
    sigma: DensityOperator,
    jumps: Sequence[tuple[np.ndarray, float]],
    basis: Optional[OperatorBasis] = None,
    name: str = "generator",
) -> LindbladGenerator:
    """Generator from jump pairs (V, omega); adjoint terms (V*, -omega) are appended.

    Self-adjoint jumps with omega = 0 are their own adjoint term.
    """
    terms: list[JumpTerm] = []
    for v, omega in jumps:
        v = np.asarray(v, dtype=complex)
        j = len(terms)
        if omega == 0 and np.allclose(v, v.conj().T, atol=HERMITIAN_TOL):
            terms.append(JumpTerm(V=v, omega=0.0, adjoint=j))
            continue
        terms.append(JumpTerm(V=v, omega=omega, adjoint=j + 1))
        terms.append(JumpTerm(V=v.conj().T, omega=-omega, adjoint=j))
    return LindbladGenerator(sigma=sigma, terms=terms, basis=basis, name=name)


def damped_qubit_generator(p: float, omega: Optional[float] = None) -> LindbladGenerator:
    """Amplitude damping towards sigma = diag(p, 1 - p).

    omega defaults to log(p / (1 - p)), the value the modular condition demands.
    """
    if not 0 < p < 1:
        raise MatrixDomainError(f"population must lie in (0, 1), got {p}")
    sigma = DensityOperator.from_matrix(np.diag([p, 1.0 - p]), TraceConvention.STANDARD)
    lowering = np.array([[0, 0], [1, 0]], dtype=complex)
    w = float(np.log(p / (1.0 - p))) if omega is None else omega
    return detailed_balance_generator(
        sigma,
        [(lowering, w)],
        basis=hermitian_basis(2, TraceConvention.STANDARD),
        name=f"damped-qubit-p{p:g}",
    )


def generator_basis(gen: LindbladGenerator) -> OperatorBasis:
    if gen.basis is not None:
        return gen.basis
    return hermitian_basis(gen.dim, gen.sigma.trace_convention)


def validate_generator(gen: LindbladGenerator, tol: float = MODULAR_TOL) -> GeneratorReport:
    """Check V_jbar = V_j*, omega_jbar = -omega_j and sigma V_j sigma^-1 = exp(-omega_j) V_j."""
    report = GeneratorReport(tol=tol)
    sigma = gen.sigma.matrix
    if gen.sigma.min_eigenvalue < FAITHFUL_EPS:
        report.failures.append(f"invariant state is not faithful (min eigenvalue {gen.sigma.min_eigenvalue:.3e})")
        return report
    sigma_inv = np.linalg.inv(sigma)
    for j, term in enumerate(gen.terms):
        if not 0 <= term.adjoint < len(gen.terms):
            report.failures.append(f"term {j}: adjoint index {term.adjoint} out of range")
            continue
        partner = gen.terms[term.adjoint]
        scale = max(1.0, float(np.max(np.abs(term.V))))
        adj = float(np.max(np.abs(partner.V - term.V.conj().T))) / scale
        freq = abs(partner.omega + term.omega)
        modular = float(np.max(np.abs(sigma @ term.V @ sigma_inv - np.exp(-term.omega) * term.V))) / scale
        report.adjoint_residuals.append(adj)
        report.frequency_residuals.append(freq)
        report.modular_residuals.append(modular)
        if adj > HERMITIAN_TOL:
            report.failures.append(f"term {j}: adjoint condition violated (residual {adj:.3e})")
        if freq > HERMITIAN_TOL:
            report.failures.append(f"term {j}: frequency condition violated (residual {freq:.3e})")
        if modular > tol:
            report.failures.append(f"term {j}: modular condition violated (residual {modular:.3e})")
    return report


def require_valid(gen: LindbladGenerator) -> None:
    report = validate_generator(gen)
    if not report.valid:
        raise GeneratorValidationError("; ".join(report.failures), report)


def heisenberg_apply(gen: LindbladGenerator, a: np.ndarray) -> np.ndarray:
    """sum_j exp(-omega_j/2) (V_j*[A, V_j] + [V_j*, A] V_j), graded when the generator is."""
    a = np.asarray(a, dtype=complex)
    la = gen.left_action(a)
    out = np.zeros_like(a)
    for term in gen.terms:
        v = term.V
        vd = v.conj().T
        if gen.graded:
            piece = 2.0 * vd @ la @ v - vd @ v @ a - a @ vd @ v
        else:
            piece = vd @ (a @ v - v @ a) + (vd @ a - a @ vd) @ v
        out = out + np.exp(-term.omega / 2.0) * piece
    return out


def lindblad_superoperator(gen: LindbladGenerator, picture: Picture = Picture.HEISENBERG) -> np.ndarray:
    """Real matrix of the generator in the generator basis; the Schrödinger picture is its transpose."""
    matrix = superop_matrix(lambda a: heisenberg_apply(gen, a), generator_basis(gen))
    if Picture(picture) is Picture.SCHROEDINGER:
        return matrix.T
    return matrix


def lindblad_apply(gen: LindbladGenerator, a: np.ndarray, picture: Picture = Picture.HEISENBERG) -> np.ndarray:
    if Picture(picture) is Picture.HEISENBERG:
        return heisenberg_apply(gen, a)
    basis = generator_basis(gen)
    matrix = lindblad_superoperator(gen, Picture.SCHROEDINGER)
    return basis.synthesize(matrix @ basis.coefficients(np.asarray(a, dtype=complex)))


def semigroup_evolve(gen: LindbladGenerator, rho: np.ndarray, t: float) -> np.ndarray:
    """exp(t L*) rho for a time-independent generator."""
    if t < 0:
        raise MatrixDomainError(f"evolution time must be nonnegative, got {t}")
    basis = generator_basis(gen)
    propagator = expm(t * lindblad_superoperator(gen, Picture.SCHROEDINGER))
    return basis.synthesize(propagator @ basis.coefficients(np.asarray(rho, dtype=complex)))
