"""Discretized quantum Schrödinger bridge and its reduction identity.

The optimized functional is

    sum_k dt (||M_k||^2_{rho_k^-1} + beta^2 I(rho_k))

with rho_k the midpoint of each step and M_k = L_rho grad Phi_k, where
-Delta_rho Phi_k = (rho_{k+1} - rho_k)/dt. In basis coordinates the kinetic
part is N * dc^T (-Delta_rho)^+ dc.
"""

from typing import Optional, Sequence

import numpy as np
from rich.console import Console

from ..exceptions import FaithfulnessError, InvariantViolationError
from ..lindblad import DifferentialStructure, fisher_information, laplacian_build, relative_entropy
from ..metric import DensityModel
from ..models import BridgePath, DensityOperator, EquivalenceReport, OptimizerMode
from ..operators import as_array, eigh, hermitian_part, matrix_function
from ..settings import DEFAULT_SETTINGS, NumericSettings
from ..utils.optimize import PathOptimum, PathProblem, lbfgs_path, monte_carlo_path
from ..utils.parallel import parallel_map

console = Console()


class StateCoordinates:
    """Real coordinates of faithful states over the Hermitian elements of a basis.

    Coordinate 0 (the trace direction) is fixed by the endpoints and is not a
    free variable.
    """

    def __init__(self, structure: DifferentialStructure, rho_in: DensityOperator, rho_fi: DensityOperator, eps: float):
        basis = structure.basis
        self.structure = structure
        self.basis = basis
        self.eps = eps
        self.convention = rho_in.trace_convention
        self.mass = rho_in.mass
        c_in = basis.coefficients(rho_in.matrix)
        c_fi = basis.coefficients(rho_fi.matrix)
        if abs(c_in[0] - c_fi[0]) > 1e-12 * max(1.0, abs(c_in[0])):
            raise InvariantViolationError("bridge endpoints must carry the same trace")
        self.c0 = c_in[0]
        self.free = [
            k for k in range(1, basis.size) if np.allclose(basis.elements[k], basis.elements[k].conj().T)
        ]
        self.start = c_in[self.free]
        self.end = c_fi[self.free]

    def full(self, node: np.ndarray) -> np.ndarray:
        c = np.zeros(self.basis.size)
        c[0] = self.c0
        c[self.free] = node
        return c

    def matrix(self, node: np.ndarray) -> np.ndarray:
        return hermitian_part(self.basis.synthesize(self.full(node)))

    def feasible(self, node: np.ndarray) -> bool:
        return float(np.linalg.eigvalsh(self.matrix(node))[0]) >= self.eps

    def state(self, node: np.ndarray) -> DensityOperator:
        return DensityOperator.from_matrix(self.matrix(node), self.convention, mass=self.mass)


def _require_faithful_state(rho: DensityOperator, eps: float, step_index: int) -> None:
    lam = rho.min_eigenvalue
    if lam < eps:
        raise FaithfulnessError(
            f"bridge state {step_index} is not faithful: min eigenvalue {lam:.3e} < {eps:.1e}",
            min_eigenvalue=lam,
            step_index=step_index,
        )


def bridge_step_cost(
    structure: DifferentialStructure,
    rho_a: np.ndarray,
    rho_b: np.ndarray,
    n_steps: int,
    beta: float,
    sigma: DensityOperator,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> float:
    """dt (||M||^2 + beta^2 I) for one step, evaluated at the midpoint state."""
    mid = 0.5 * (rho_a + rho_b)
    lap = laplacian_build(mid, structure, rtol=settings.kernel_rtol, eps=settings.faithful_eps)
    dc = lap.basis.coefficients(rho_b - rho_a)
    dc[0] = 0.0
    value = n_steps * float(dc @ lap.pinv @ dc)
    if beta > 0:
        value += beta**2 * fisher_information(mid, sigma.matrix, structure) / n_steps
    return value


def _optimize(
    problem: PathProblem,
    mode: OptimizerMode,
    seed: Optional[int],
    settings: NumericSettings,
) -> PathOptimum:
    if OptimizerMode(mode) is OptimizerMode.MC:
        if seed is None:
            raise ValueError("a seed is mandatory for Monte-Carlo mode")
        return monte_carlo_path(problem, np.random.default_rng(seed), settings=settings)
    return lbfgs_path(problem, settings=settings)


def sbp_solve(
    structure: DifferentialStructure,
    rho_in: DensityOperator,
    rho_fi: DensityOperator,
    beta: float,
    n_steps: int,
    mode: OptimizerMode = OptimizerMode.GRAD,
    seed: Optional[int] = None,
    sigma: Optional[DensityOperator] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> BridgePath:
    """Minimize the bridge functional over interior states with pinned endpoints.

    Trial states below the faithfulness floor are rejected by the optimizer.
    """
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    eps = settings.faithful_eps
    _require_faithful_state(rho_in, eps, 0)
    _require_faithful_state(rho_fi, eps, n_steps)
    reference = structure.generator.sigma if sigma is None else sigma
    coords = StateCoordinates(structure, rho_in, rho_fi, eps)

    def pair_term(k: int, a: np.ndarray, b: np.ndarray) -> float:
        return bridge_step_cost(structure, coords.matrix(a), coords.matrix(b), n_steps, beta, reference, settings)

    problem = PathProblem(
        coords.start, coords.end, n_steps, pair_term, feasible=coords.feasible, fd_step=settings.fd_rel_step
    )
    optimum = _optimize(problem, mode, seed, settings)
    states = [rho_in] + [coords.state(node) for node in optimum.path[1:-1]] + [rho_fi]
    for k, rho in enumerate(states):
        _require_faithful_state(rho, eps, k)
    return BridgePath(
        states=states,
        beta=beta,
        functional_value=optimum.value,
        trace=optimum.trace,
        converged=optimum.converged,
        parameters=optimum.path,
    )


def sbp_solve_parametric(
    model: DensityModel,
    theta_in,
    theta_fi,
    beta: float,
    n_steps: int,
    mode: OptimizerMode = OptimizerMode.GRAD,
    seed: Optional[int] = None,
    sigma: Optional[DensityOperator] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> BridgePath:
    """Bridge restricted to the states rho(theta) of a parametric family."""
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    structure = model.structure
    reference = structure.generator.sigma if sigma is None else sigma
    a = model.check_domain(theta_in, step_index=0)
    b = model.check_domain(theta_fi, step_index=n_steps)

    def pair_term(k: int, x: np.ndarray, y: np.ndarray) -> float:
        return bridge_step_cost(
            structure, model.state(x).matrix, model.state(y).matrix, n_steps, beta, reference, settings
        )

    problem = PathProblem(a, b, n_steps, pair_term, feasible=model.in_domain, fd_step=settings.fd_rel_step)
    optimum = _optimize(problem, mode, seed, settings)
    return BridgePath(
        states=[model.state(theta) for theta in optimum.path],
        beta=beta,
        functional_value=optimum.value,
        trace=optimum.trace,
        converged=optimum.converged,
        parameters=optimum.path,
    )


def sbp_equivalence_check(
    path: BridgePath,
    structure: DifferentialStructure,
    beta: Optional[float] = None,
    sigma: Optional[DensityOperator] = None,
    scheme: str = "left",
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> EquivalenceReport:
    """Evaluate sum dt ||m||^2 against sum dt (||M||^2 + beta^2 I) + 2 beta (S(rho_fi) - S(rho_in)).

    m = L_rho grad(Phi + beta psi) with psi = log rho - log sigma. scheme="left"
    evaluates rho, psi and the multiplication at the left node of each step and
    gives an O(dt) residual; scheme="midpoint" uses the step midpoint and gives
    O(dt^2).
    """
    if scheme not in ("left", "midpoint"):
        raise ValueError(f"unknown scheme '{scheme}', expected 'left' or 'midpoint'")
    beta = path.beta if beta is None else beta
    reference = structure.generator.sigma if sigma is None else sigma
    log_sigma = matrix_function(reference.matrix, "log").matrix
    n_steps = path.n_steps
    dt = 1.0 / n_steps
    matrices = [s.matrix for s in path.states]

    lhs = rhs = cross = 0.0
    for k in range(n_steps):
        a, b = matrices[k], matrices[k + 1]
        rho = a if scheme == "left" else 0.5 * (a + b)
        spectrum = eigh(rho)
        if spectrum.values[0] < settings.faithful_eps:
            raise FaithfulnessError(
                f"bridge state {k} is not faithful", min_eigenvalue=float(spectrum.values[0]), step_index=k
            )
        lap = laplacian_build(rho, structure, rtol=settings.kernel_rtol, eps=settings.faithful_eps)
        phi = lap.solve((b - a) / dt)
        psi = matrix_function(rho, "log").matrix - log_sigma
        prepared = structure.prepare(rho, settings.faithful_eps)
        drift = phi + beta * psi
        kinetic = prepared.metric(phi, phi)
        fisher = prepared.metric(psi, psi)
        lhs += dt * prepared.metric(drift, drift)
        rhs += dt * (kinetic + beta**2 * fisher)
        cross += 2.0 * beta * dt * prepared.metric(phi, psi)

    entropy_difference = relative_entropy(path.states[-1], reference) - relative_entropy(path.states[0], reference)
    rhs += 2.0 * beta * entropy_difference
    return EquivalenceReport(
        beta=beta,
        n_steps=n_steps,
        scheme=scheme,
        lhs=lhs,
        rhs=rhs,
        cross_term=cross,
        entropy_difference=entropy_difference,
    )


def bridge_functional(
    path: BridgePath,
    structure: DifferentialStructure,
    sigma: Optional[DensityOperator] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> float:
    """The midpoint bridge functional of a given path, without optimizing."""
    reference = structure.generator.sigma if sigma is None else sigma
    matrices = [as_array(s.matrix) for s in path.states]
    return float(
        sum(
            bridge_step_cost(structure, matrices[k], matrices[k + 1], path.n_steps, path.beta, reference, settings)
            for k in range(path.n_steps)
        )
    )


def sbp_beta_sweep(
    structure: DifferentialStructure,
    rho_in: DensityOperator,
    rho_fi: DensityOperator,
    betas: Sequence[float],
    n_steps: int,
    mode: OptimizerMode = OptimizerMode.GRAD,
    seed: Optional[int] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
    max_workers: Optional[int] = None,
) -> list[BridgePath]:
    """Independent bridge solves for each beta, run concurrently in input order."""

    def solve(beta: float) -> BridgePath:
        return sbp_solve(structure, rho_in, rho_fi, beta, n_steps, mode=mode, seed=seed, settings=settings)

    paths = parallel_map(solve, list(betas), description="Solving bridges...", max_workers=max_workers)
    for beta, path in zip(betas, paths):
        if not path.converged:
            console.print(f"  [yellow]⚠[/yellow] bridge at beta={beta:g} did not converge")
    return paths
