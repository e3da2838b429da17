"""Constrained geodesics between Gaussian states."""

from typing import Optional, Sequence

import numpy as np
from rich.console import Console

from ..exceptions import AdmissibilityError
from ..models import FlowTrajectory, GaussianState, OptimizerMode
from ..operators import lyapunov_solve
from ..settings import DEFAULT_SETTINGS, NumericSettings
from ..utils.optimize import PathProblem, lbfgs_path, monte_carlo_path
from .states import is_admissible, state_to_theta, theta_to_arrays

console = Console()


def _step_cost(a: np.ndarray, b: np.ndarray, m: int) -> float:
    mu_a, sigma_a = theta_to_arrays(a, m)
    mu_b, sigma_b = theta_to_arrays(b, m)
    d_mu = mu_b - mu_a
    s = lyapunov_solve(sigma_a, sigma_b - sigma_a)
    return float(d_mu @ d_mu + np.trace(s @ sigma_a @ s))


def gaussian_action(thetas: Sequence[np.ndarray], m: int = 1) -> float:
    """N sum_k |mu_{k+1} - mu_k|^2 + tr(S_k Sigma_k S_k), S_k = L_{Sigma_k}(Sigma_{k+1} - Sigma_k)."""
    thetas = np.asarray(thetas, dtype=float)
    n_steps = thetas.shape[0] - 1
    return float(n_steps * sum(_step_cost(thetas[k], thetas[k + 1], m) for k in range(n_steps)))


def states_action(states: Sequence[GaussianState]) -> float:
    return gaussian_action([state_to_theta(s) for s in states], states[0].m)


def gaussian_geodesic(
    start: GaussianState,
    end: GaussianState,
    n_steps: int,
    mode: OptimizerMode = OptimizerMode.GRAD,
    seed: Optional[int] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> FlowTrajectory:
    """Minimize the discretized action over interior Gaussian states.

    Every accepted node satisfies Sigma > 0 and Sigma + i nu >= 0; the
    optimizer starts from the linear interpolation, which is admissible by
    convexity of the constraint set.
    """
    if start.m != end.m:
        raise AdmissibilityError("endpoints must have the same number of modes")
    m = start.m

    def feasible(theta: np.ndarray) -> bool:
        return is_admissible(theta_to_arrays(theta, m)[1])

    problem = PathProblem(
        state_to_theta(start),
        state_to_theta(end),
        n_steps,
        pair_term=lambda k, a, b: n_steps * _step_cost(a, b, m),
        feasible=feasible,
        fd_step=settings.fd_rel_step,
    )
    linear_value = problem.value(problem.linear_path())
    if OptimizerMode(mode) is OptimizerMode.MC:
        if seed is None:
            raise ValueError("a seed is mandatory for Monte-Carlo mode")
        optimum = monte_carlo_path(problem, np.random.default_rng(seed), settings=settings)
    else:
        optimum = lbfgs_path(problem, settings=settings)

    path = optimum.path
    message = optimum.message
    if not all(feasible(node) for node in path):
        console.print("  [yellow]⚠[/yellow] optimized Gaussian path left the admissible set; keeping the linear path")
        path = problem.linear_path()
        message = "optimized path infeasible, linear interpolation returned"
        optimum = optimum.model_copy(update={"value": linear_value, "converged": False})

    return FlowTrajectory(
        times=np.linspace(0.0, 1.0, n_steps + 1),
        thetas=path,
        diagnostics={"action": optimum.trace, "linear_action": [linear_value], "final_action": [optimum.value]},
        converged=optimum.converged,
        message=message,
    )
