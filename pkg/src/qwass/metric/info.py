"""Score solves, the Wasserstein information matrix and discrete path actions."""

from typing import Optional, Sequence

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ..exceptions import DomainExitError, InvariantViolationError, PreconditionError
from ..lindblad import DifferentialStructure, TransportLaplacian, laplacian_build
from ..models import HermitianOperator, TraceConvention, WassersteinInfoMatrix
from ..operators import as_array
from ..settings import DEFAULT_SETTINGS, PRECONDITION_TOL, NumericSettings
from .models import DensityModel, GaussianModel, ParametricModel

SCORE_RESIDUAL_RTOL = 1e-9


def _traceless(d: np.ndarray, convention: TraceConvention) -> np.ndarray:
    dim = d.shape[0]
    unit = convention.trace(np.eye(dim)).real
    return d - (convention.trace(d) / unit) * np.eye(dim)


def _central_difference(model: DensityModel, theta: np.ndarray, i: int, h: float) -> np.ndarray:
    plus, minus = theta.copy(), theta.copy()
    plus[i] += h
    minus[i] -= h
    if not (model.in_domain(plus) and model.in_domain(minus)):
        raise DomainExitError(f"finite-difference stencil of width {h:.3e} leaves the domain", last_valid=theta)
    return (model.state(plus).matrix - model.state(minus).matrix) / (2.0 * h)


def model_derivative(
    model: DensityModel,
    theta,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> list[HermitianOperator]:
    """Partial derivatives of rho(theta), projected to be exactly traceless.

    Uses the analytic derivative when the model has one; otherwise central
    differences with h_i = h_rel * max(1, |theta_i|), halved while the stencil
    leaves the domain.
    """
    theta = model.check_domain(theta)
    convention = model.structure.convention
    analytic = model.derivative(theta)
    if analytic is not None:
        return [HermitianOperator(matrix=_traceless(np.asarray(d, dtype=complex), convention)) for d in analytic]

    out = []
    for i in range(model.dim_params):
        h0 = settings.fd_rel_step * max(1.0, abs(theta[i]))
        retrying = Retrying(
            stop=stop_after_attempt(settings.max_step_halvings + 1),
            retry=retry_if_exception_type(DomainExitError),
            reraise=True,
        )
        for attempt in retrying:
            with attempt:
                h = h0 / 2 ** (attempt.retry_state.attempt_number - 1)
                d = _central_difference(model, theta, i, h)
        out.append(HermitianOperator(matrix=_traceless(d, convention)))
    return out


def score_solve(
    rho,
    x,
    structure: DifferentialStructure,
    laplacian: Optional[TransportLaplacian] = None,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> HermitianOperator:
    """Phi with -Delta_rho Phi = X and Phi orthogonal to the identity."""
    x = as_array(x)
    scale = max(1.0, float(np.max(np.abs(x))))
    tr = structure.convention.trace(x)
    if abs(tr) > PRECONDITION_TOL * scale:
        raise PreconditionError(f"score target must be traceless, got trace {tr.real:.3e}")
    if laplacian is None:
        laplacian = laplacian_build(rho, structure, rtol=settings.kernel_rtol, eps=settings.faithful_eps)
    phi = laplacian.solve(x)
    residual = float(np.max(np.abs(laplacian.apply(phi) - x))) if x.size else 0.0
    if residual > SCORE_RESIDUAL_RTOL * scale:
        raise InvariantViolationError(f"score solve residual {residual:.3e} exceeds tolerance")
    return HermitianOperator(matrix=phi, tol=1e-9)


def _density_info(model: DensityModel, theta: np.ndarray, settings: NumericSettings) -> np.ndarray:
    rho = model.state(theta)
    derivs = [d.matrix for d in model_derivative(model, theta, settings)]
    lap = laplacian_build(rho.matrix, model.structure, rtol=settings.kernel_rtol, eps=settings.faithful_eps)
    coords = np.column_stack([lap.basis.coefficients(d) for d in derivs])
    mixed = coords @ model.G_theta  # columns (d_rho G_theta)_j
    return mixed.T @ lap.pinv @ mixed


def wasserstein_info_matrix(
    model: ParametricModel,
    theta,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> WassersteinInfoMatrix:
    """(G_W)_ij = tau((G_theta^T d_rho)_i (-Delta_rho)^+ (d_rho G_theta)_j)."""
    theta = model.check_domain(theta)
    if isinstance(model, DensityModel):
        g = _density_info(model, theta, settings)
    elif isinstance(model, GaussianModel):
        g = model.G_theta.T @ model.coordinate_matrix(theta) @ model.G_theta
    else:
        raise InvariantViolationError(f"no information matrix rule for model {model.name}")
    return WassersteinInfoMatrix(theta=theta, matrix=0.5 * (g + g.T))


def info_matrix(model: ParametricModel, theta, settings: NumericSettings = DEFAULT_SETTINGS) -> np.ndarray:
    return wasserstein_info_matrix(model, theta, settings).matrix


def pullback_metric(model: ParametricModel, theta, xi, eta, settings: NumericSettings = DEFAULT_SETTINGS) -> float:
    """<xi, G_W(theta) eta>."""
    g = info_matrix(model, theta, settings)
    return float(np.atleast_1d(xi) @ g @ np.atleast_1d(eta))


def state_metric(rho, x, y, structure: DifferentialStructure, settings: NumericSettings = DEFAULT_SETTINGS) -> float:
    """<Phi_X, Y> with Phi_X the score of X at rho."""
    phi = score_solve(rho, x, structure, settings=settings)
    return structure.inner(phi.matrix, as_array(y))


def path_action(
    model: ParametricModel,
    path: Sequence,
    settings: NumericSettings = DEFAULT_SETTINGS,
) -> float:
    """N sum_k <dtheta_k, G_W(theta_k) dtheta_k> over a path of N + 1 points."""
    points = [np.atleast_1d(np.asarray(p, dtype=float)) for p in path]
    if len(points) < 2:
        raise InvariantViolationError("a path needs at least two points")
    for k, p in enumerate(points):
        model.check_domain(p, step_index=k)
    n_steps = len(points) - 1
    total = 0.0
    for k in range(n_steps):
        step = points[k + 1] - points[k]
        if not np.any(step):
            continue
        total += float(step @ info_matrix(model, points[k], settings) @ step)
    return n_steps * total
