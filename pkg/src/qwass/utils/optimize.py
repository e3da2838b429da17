"""Minimizers for discretized path functionals with pinned endpoints.

A path functional is a sum of pair terms f_k(x_k, x_{k+1}) over consecutive
nodes, so the gradient with respect to an interior node only involves the two
terms that touch it.
"""

from typing import Callable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from rich.console import Console
from scipy.optimize import minimize

from ..exceptions import (
    AdmissibilityError,
    DomainExitError,
    FaithfulnessError,
    InvariantViolationError,
    MatrixDomainError,
)
from ..settings import DEFAULT_SETTINGS, NumericSettings

console = Console()

PairTerm = Callable[[int, np.ndarray, np.ndarray], float]
NodeCheck = Callable[[np.ndarray], bool]

INFEASIBLE_VALUE = 1e12
PATH_FTOL = 1e-13  # relative decrease stopping rule for L-BFGS-B

# raised by pair terms evaluated outside the feasible set
INFEASIBLE_ERRORS = (
    AdmissibilityError,
    DomainExitError,
    FaithfulnessError,
    InvariantViolationError,
    MatrixDomainError,
)


class PathOptimum(BaseModel):
    """Best path found with the best-so-far objective trace."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    path: np.ndarray
    value: float
    trace: list[float] = Field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    message: str = ""


class PathProblem:
    """Pinned-endpoint path functional sum_k f_k(x_k, x_{k+1})."""

    def __init__(
        self,
        start: np.ndarray,
        end: np.ndarray,
        n_steps: int,
        pair_term: PairTerm,
        feasible: Optional[NodeCheck] = None,
        fd_step: float = 1e-6,
    ):
        self.start = np.atleast_1d(np.asarray(start, dtype=float))
        self.end = np.atleast_1d(np.asarray(end, dtype=float))
        if self.start.shape != self.end.shape:
            raise InvariantViolationError("path endpoints must have the same shape")
        if n_steps < 1:
            raise InvariantViolationError(f"a path needs at least one step, got {n_steps}")
        self.n_steps = n_steps
        self.pair_term = pair_term
        self.feasible = feasible or (lambda _: True)
        self.fd_step = fd_step

    @property
    def node_dim(self) -> int:
        return self.start.shape[0]

    def linear_path(self) -> np.ndarray:
        t = np.linspace(0.0, 1.0, self.n_steps + 1)[:, None]
        return (1.0 - t) * self.start + t * self.end

    def assemble(self, x: np.ndarray) -> np.ndarray:
        interior = np.asarray(x, dtype=float).reshape(self.n_steps - 1, self.node_dim)
        return np.vstack([self.start, interior, self.end])

    def interior(self, path: np.ndarray) -> np.ndarray:
        return np.asarray(path[1:-1], dtype=float).ravel()

    def term(self, k: int, a: np.ndarray, b: np.ndarray) -> float:
        """One pair term, or +inf when a node is infeasible."""
        if not (self.feasible(a) and self.feasible(b)):
            return np.inf
        try:
            value = float(self.pair_term(k, a, b))
        except INFEASIBLE_ERRORS:
            return np.inf
        return value if np.isfinite(value) else np.inf

    def value(self, path: np.ndarray) -> float:
        return float(sum(self.term(k, path[k], path[k + 1]) for k in range(self.n_steps)))

    def local_value(self, path: np.ndarray, i: int, node: np.ndarray) -> float:
        return self.term(i - 1, path[i - 1], node) + self.term(i, node, path[i + 1])

    def gradient(self, path: np.ndarray) -> np.ndarray:
        """Central differences touching only the two terms adjacent to each node."""
        grad = np.zeros((self.n_steps - 1, self.node_dim))
        for i in range(1, self.n_steps):
            base = None
            for c in range(self.node_dim):
                h = self.fd_step * max(1.0, abs(path[i, c]))
                plus = path[i].copy()
                minus = path[i].copy()
                plus[c] += h
                minus[c] -= h
                f_plus = self.local_value(path, i, plus)
                f_minus = self.local_value(path, i, minus)
                if np.isfinite(f_plus) and np.isfinite(f_minus):
                    grad[i - 1, c] = (f_plus - f_minus) / (2.0 * h)
                    continue
                if base is None:
                    base = self.local_value(path, i, path[i])
                if np.isfinite(f_plus) and np.isfinite(base):
                    grad[i - 1, c] = (f_plus - base) / h
                elif np.isfinite(f_minus) and np.isfinite(base):
                    grad[i - 1, c] = (base - f_minus) / h
        return grad.ravel()


def lbfgs_path(
    problem: PathProblem,
    initial: Optional[np.ndarray] = None,
    bounds: Optional[Sequence[tuple[float, float]]] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> PathOptimum:
    """Minimize over interior nodes with L-BFGS-B and local FD gradients.

    Infeasible trial points evaluate to a large finite value so the line search
    backs off; bounds are per node coordinate and repeated for every node.
    """
    path0 = problem.linear_path() if initial is None else np.asarray(initial, dtype=float).reshape(-1, problem.node_dim)
    value0 = problem.value(path0)
    if problem.n_steps == 1:
        return PathOptimum(path=path0, value=value0, trace=[value0], converged=True, message="no interior nodes")
    if not np.isfinite(value0):
        raise DomainExitError("initial path leaves the feasible set", last_valid=path0[0])

    best = {"x": problem.interior(path0), "value": value0}
    trace = [value0]

    def objective(x: np.ndarray) -> float:
        value = problem.value(problem.assemble(x))
        if not np.isfinite(value):
            return INFEASIBLE_VALUE
        if value < best["value"]:
            best["x"], best["value"] = x.copy(), value
        return value

    def jac(x: np.ndarray) -> np.ndarray:
        return problem.gradient(problem.assemble(x))

    full_bounds = None
    if bounds is not None:
        full_bounds = list(bounds) * (problem.n_steps - 1)

    result = minimize(
        objective,
        problem.interior(path0),
        jac=jac,
        method="L-BFGS-B",
        bounds=full_bounds,
        callback=lambda _: trace.append(best["value"]),
        options={"maxiter": settings.max_iter, "gtol": settings.grad_tol, "ftol": PATH_FTOL},
    )
    path = problem.assemble(best["x"])
    converged = bool(result.success)
    if not converged:
        console.print(f"  [yellow]⚠[/yellow] path optimizer stopped early: {result.message}")
    return PathOptimum(
        path=path,
        value=best["value"],
        trace=trace,
        converged=converged,
        iterations=int(result.nit),
        message=str(result.message),
    )


def monte_carlo_path(
    problem: PathProblem,
    rng: np.random.Generator,
    initial: Optional[np.ndarray] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> PathOptimum:
    """Node-wise random search with a step that shrinks every epoch.

    A proposal is accepted only when it keeps the node feasible and lowers the
    two adjacent terms.
    """
    path = problem.linear_path() if initial is None else np.array(initial, dtype=float).reshape(-1, problem.node_dim)
    value = problem.value(path)
    if not np.isfinite(value):
        raise DomainExitError("initial path leaves the feasible set", last_valid=path[0])
    trace = [value]
    step = settings.mc_initial_step
    last_gain = np.inf
    for _ in range(settings.mc_epochs):
        start_value = value
        for i in range(1, problem.n_steps):
            proposal = path[i] + step * rng.standard_normal(problem.node_dim)
            if not problem.feasible(proposal):
                continue
            old = problem.local_value(path, i, path[i])
            new = problem.local_value(path, i, proposal)
            if new < old:
                path[i] = proposal
                value += new - old
        value = problem.value(path)
        trace.append(min(trace[-1], value))
        last_gain = start_value - value
        step *= settings.mc_step_decay
    converged = last_gain <= settings.grad_tol * max(1.0, abs(value))
    return PathOptimum(
        path=path,
        value=value,
        trace=trace,
        converged=bool(converged),
        iterations=settings.mc_epochs,
        message=f"{settings.mc_epochs} epochs, final step {step:.3e}",
    )
