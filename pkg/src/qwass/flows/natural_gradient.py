"""Wasserstein natural-gradient descent on parameter space."""

from typing import Callable, Optional

import numpy as np
from rich.console import Console
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ..exceptions import DomainExitError
from ..lindblad import DifferentialStructure, laplacian_apply, relative_entropy
from ..metric import DensityModel, ParametricModel, info_matrix
from ..models import DensityOperator, FlowTrajectory
from ..operators import as_array, matrix_function
from ..settings import DEFAULT_SETTINGS, NumericSettings

console = Console()

Objective = Callable[[np.ndarray], float]
Gradient = Callable[[np.ndarray], np.ndarray]


def entropy_objective(model: DensityModel, sigma: Optional[DensityOperator] = None) -> Objective:
    """theta -> S_sigma(rho(theta)), sigma defaulting to the structure's invariant state."""
    reference = model.structure.generator.sigma if sigma is None else sigma

    def objective(theta: np.ndarray) -> float:
        return relative_entropy(model.state(theta), reference)

    return objective


def numeric_gradient(
    model: ParametricModel,
    objective: Objective,
    theta: np.ndarray,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> np.ndarray:
    """Central differences of R, shrinking the stencil near the domain boundary."""
    theta = np.asarray(theta, dtype=float)
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        h0 = settings.fd_rel_step * max(1.0, abs(theta[i]))
        for attempt in Retrying(
            stop=stop_after_attempt(settings.max_step_halvings + 1),
            retry=retry_if_exception_type(DomainExitError),
            reraise=True,
        ):
            with attempt:
                h = h0 / 2 ** (attempt.retry_state.attempt_number - 1)
                plus, minus = theta.copy(), theta.copy()
                plus[i] += h
                minus[i] -= h
                if not (model.in_domain(plus) and model.in_domain(minus)):
                    raise DomainExitError("gradient stencil leaves the domain", last_valid=theta)
                grad[i] = (objective(plus) - objective(minus)) / (2.0 * h)
    return grad


def natural_gradient_direction(
    model: ParametricModel,
    theta: np.ndarray,
    grad: np.ndarray,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> np.ndarray:
    """G_W(theta)^-1 G_theta D_theta R."""
    g = info_matrix(model, theta, settings)
    return np.linalg.solve(g, model.G_theta @ grad)


def natural_gradient_flow(
    model: ParametricModel,
    theta0,
    objective: Objective,
    tau: float,
    n_steps: int,
    gradient: Optional[Gradient] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> FlowTrajectory:
    """Forward Euler theta_{k+1} = theta_k - tau G_W^-1 G_theta D_theta R.

    A step that leaves the domain is halved up to max_step_halvings times before
    the DomainExitError propagates.
    """
    if tau <= 0:
        raise ValueError(f"step size must be positive, got {tau}")
    theta = model.check_domain(theta0).copy()
    times = [0.0]
    thetas = [theta.copy()]
    values = [float(objective(theta))]
    steps_used: list[float] = []

    for k in range(n_steps):
        grad = gradient(theta) if gradient is not None else numeric_gradient(model, objective, theta, settings)
        direction = natural_gradient_direction(model, theta, np.atleast_1d(grad), settings)
        current = theta
        for attempt in Retrying(
            stop=stop_after_attempt(settings.max_step_halvings + 1),
            retry=retry_if_exception_type(DomainExitError),
            reraise=True,
        ):
            with attempt:
                step = tau / 2 ** (attempt.retry_state.attempt_number - 1)
                candidate = current - step * direction
                if not model.in_domain(candidate):
                    raise DomainExitError(
                        f"Euler step {k} of size {step:.3e} leaves the domain",
                        last_valid=current,
                        step_index=k,
                    )
        if step < tau:
            console.print(f"  [yellow]⚠[/yellow] step {k}: halved to {step:.3e} to stay in the domain")
        theta = candidate
        times.append(times[-1] + step)
        thetas.append(theta.copy())
        values.append(float(objective(theta)))
        steps_used.append(step)

    return FlowTrajectory(
        times=times,
        thetas=thetas,
        diagnostics={"objective": values, "step": steps_used},
    )


def state_space_gradient_step(
    structure: DifferentialStructure,
    rho,
    tau: float,
    sigma: Optional[DensityOperator] = None,
) -> np.ndarray:
    """rho + tau Delta_rho(log rho - log sigma), the state-space entropy gradient step."""
    reference = structure.generator.sigma if sigma is None else sigma
    r = as_array(rho)
    psi = matrix_function(r, "log").matrix - matrix_function(reference.matrix, "log").matrix
    return r - tau * laplacian_apply(structure, r, psi)
