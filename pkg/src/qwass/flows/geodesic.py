"""Geodesics on parameter space: boundary-value optimization and Hamiltonian shooting."""

from typing import Optional

import numpy as np
from rich.console import Console

from ..exceptions import DomainExitError
from ..metric import FermionicQubitModel, ParametricModel, info_matrix, path_action
from ..models import FlowTrajectory, OptimizerMode
from ..settings import DEFAULT_SETTINGS, NumericSettings
from ..utils.optimize import PathProblem, lbfgs_path, monte_carlo_path

console = Console()


class InfoCache:
    """Memoized G_W(theta) keyed by the exact parameter bytes."""

    def __init__(self, model: ParametricModel, settings: NumericSettings, max_size: int = 4096):
        self.model = model
        self.settings = settings
        self.max_size = max_size
        self._store: dict[bytes, np.ndarray] = {}

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        theta = np.ascontiguousarray(theta, dtype=float)
        key = theta.tobytes()
        hit = self._store.get(key)
        if hit is None:
            if len(self._store) >= self.max_size:
                self._store.clear()
            hit = info_matrix(self.model, theta, self.settings)
            self._store[key] = hit
        return hit


def geodesic_bvp(
    model: ParametricModel,
    theta0,
    theta1,
    n_steps: int,
    mode: OptimizerMode = OptimizerMode.GRAD,
    seed: Optional[int] = None,
    rule: str = "midpoint",
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> FlowTrajectory:
    """Minimize the discretized action over interior points with pinned endpoints.

    rule="midpoint" weights each step with G_W at the step midpoint (second
    order); rule="left" minimizes path_action itself. Diagnostics carry the
    objective trace and path_action of the result.
    """
    a = model.check_domain(theta0)
    b = model.check_domain(theta1)
    cache = InfoCache(model, settings)
    if rule == "midpoint":
        weight = lambda x, y: cache(0.5 * (x + y))  # noqa: E731
    elif rule == "left":
        weight = lambda x, y: cache(x)  # noqa: E731
    else:
        raise ValueError(f"unknown discretization rule '{rule}', expected 'midpoint' or 'left'")

    def pair_term(k: int, x: np.ndarray, y: np.ndarray) -> float:
        d = y - x
        if not np.any(d):
            return 0.0
        return n_steps * float(d @ weight(x, y) @ d)

    problem = PathProblem(a, b, n_steps, pair_term, feasible=model.in_domain, fd_step=settings.fd_rel_step)
    linear = problem.linear_path()
    linear_value = problem.value(linear)
    bounds = None
    if isinstance(model, FermionicQubitModel):
        edge = 1.0 - model.margin
        bounds = [(-edge, edge)]

    if OptimizerMode(mode) is OptimizerMode.MC:
        if seed is None:
            raise ValueError("a seed is mandatory for Monte-Carlo mode")
        optimum = monte_carlo_path(problem, np.random.default_rng(seed), settings=settings)
    else:
        optimum = lbfgs_path(problem, bounds=bounds, settings=settings)

    if not optimum.converged:
        console.print(f"  [yellow]⚠[/yellow] geodesic solver returned its best path: {optimum.message}")
    action = path_action(model, optimum.path, settings)
    return FlowTrajectory(
        times=np.linspace(0.0, 1.0, n_steps + 1),
        thetas=optimum.path,
        diagnostics={
            "objective": optimum.trace,
            "linear_objective": [linear_value],
            "path_action": [action],
            "linear_path_action": [path_action(model, linear, settings)],
        },
        converged=optimum.converged,
        message=optimum.message,
    )


def euler_lagrange_residual(model: ParametricModel, path, settings: NumericSettings = DEFAULT_SETTINGS) -> np.ndarray:
    """G_W'(theta) theta'^2 + 2 G_W(theta) theta'' at interior nodes of a one-parameter path.

    Derivatives are centered differences on the uniform grid t_k = k/N; G_W' is a
    centered difference in theta.
    """
    thetas = np.asarray(path, dtype=float).reshape(-1)
    if model.dim_params != 1:
        raise ValueError("the Euler-Lagrange residual is implemented for one-parameter models")
    n_steps = thetas.size - 1
    h = 1.0 / n_steps
    out = np.zeros(n_steps - 1)
    for k in range(1, n_steps):
        t = thetas[k]
        vel = (thetas[k + 1] - thetas[k - 1]) / (2.0 * h)
        acc = (thetas[k + 1] - 2.0 * t + thetas[k - 1]) / (h * h)
        dt = settings.fd_rel_step * max(1.0, abs(t)) * 100.0
        g = info_matrix(model, [t], settings)[0, 0]
        g_prime = (info_matrix(model, [t + dt], settings)[0, 0] - info_matrix(model, [t - dt], settings)[0, 0]) / (2 * dt)
        out[k - 1] = g_prime * vel**2 + 2.0 * g * acc
    return out


def _inverse_metric(model: ParametricModel, theta: np.ndarray, settings: NumericSettings) -> np.ndarray:
    return np.linalg.inv(info_matrix(model, theta, settings))


def hamiltonian(model: ParametricModel, theta, momentum, settings: NumericSettings = DEFAULT_SETTINGS) -> float:
    """H = 1/2 <P, G_W(theta)^-1 P>."""
    p = np.atleast_1d(np.asarray(momentum, dtype=float))
    return 0.5 * float(p @ _inverse_metric(model, np.atleast_1d(theta), settings) @ p)


def _hamilton_rhs(model: ParametricModel, theta: np.ndarray, p: np.ndarray, settings: NumericSettings):
    if not model.in_domain(theta):
        raise DomainExitError("trajectory left the domain", last_valid=theta)
    g_inv = _inverse_metric(model, theta, settings)
    dp = np.zeros_like(p)
    for i in range(theta.size):
        h = settings.fd_rel_step * max(1.0, abs(theta[i])) * 100.0
        plus, minus = theta.copy(), theta.copy()
        plus[i] += h
        minus[i] -= h
        if not (model.in_domain(plus) and model.in_domain(minus)):
            raise DomainExitError("trajectory reached the domain boundary", last_valid=theta)
        d_ginv = (_inverse_metric(model, plus, settings) - _inverse_metric(model, minus, settings)) / (2.0 * h)
        dp[i] = -0.5 * float(p @ d_ginv @ p)
    return g_inv @ p, dp


def geodesic_ivp(
    model: ParametricModel,
    theta0,
    momentum0,
    t_end: float = 1.0,
    dt: float = 1e-3,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> FlowTrajectory:
    """RK4 for theta' = G_W^-1 P, P' = -1/2 d_theta <P, G_W^-1 P>.

    Leaving the domain truncates the trajectory and sets exited_domain.
    """
    theta = model.check_domain(theta0).copy()
    p = np.atleast_1d(np.asarray(momentum0, dtype=float)).copy()
    n_steps = max(1, int(round(t_end / dt)))
    dt = t_end / n_steps
    times, thetas = [0.0], [theta.copy()]
    energies = [hamiltonian(model, theta, p, settings)]
    momenta = [p.copy()]
    exited = False
    message = ""
    for k in range(n_steps):
        try:
            k1 = _hamilton_rhs(model, theta, p, settings)
            k2 = _hamilton_rhs(model, theta + 0.5 * dt * k1[0], p + 0.5 * dt * k1[1], settings)
            k3 = _hamilton_rhs(model, theta + 0.5 * dt * k2[0], p + 0.5 * dt * k2[1], settings)
            k4 = _hamilton_rhs(model, theta + dt * k3[0], p + dt * k3[1], settings)
        except DomainExitError as e:
            exited, message = True, f"step {k}: {e}"
            break
        new_theta = theta + dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        new_p = p + dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        if not model.in_domain(new_theta):
            exited, message = True, f"step {k}: trajectory left the domain"
            break
        theta, p = new_theta, new_p
        times.append((k + 1) * dt)
        thetas.append(theta.copy())
        momenta.append(p.copy())
        energies.append(hamiltonian(model, theta, p, settings))

    if exited:
        console.print(f"  [yellow]⚠[/yellow] geodesic shooting stopped early: {message}")
    return FlowTrajectory(
        times=times,
        thetas=thetas,
        diagnostics={
            "hamiltonian": energies,
            "momentum": [float(np.linalg.norm(m)) for m in momenta],
            "final_momentum": [float(v) for v in momenta[-1]],
        },
        exited_domain=exited,
        message=message,
    )
