"""Gaussian phase-space states, their Wigner densities and characteristic functions.

Conventions: nu = block-diag [[0, 1], [-1, 0]], the vacuum has Sigma = I and
W(z) = exp(-1/2 (z - mu)^T Sigma^-1 (z - mu)) / ((2 pi)^m sqrt(det Sigma)).
The characteristic function is parametrized by (gamma, d) = (2 Sigma, mu), so
chi(xi) = exp(-1/4 xi^T gamma xi + i d.xi) is the Fourier transform of W.
"""

from typing import Union

import numpy as np
from scipy.linalg import block_diag

from ..exceptions import AdmissibilityError, InvariantViolationError
from ..models import GaussianMixture, GaussianState, symplectic_form
from ..models.gaussian import admissibility_check
from ..settings import HERMITIAN_TOL, SYMPLECTIC_TOL


def validate_gaussian(Sigma, mu=None, tol: float = SYMPLECTIC_TOL) -> GaussianState:
    """Build a state iff Sigma > 0 and Sigma + i nu >= 0; errors name the eigenvalue."""
    sigma = np.asarray(Sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise InvariantViolationError(f"covariance must be square, got shape {sigma.shape}")
    if np.max(np.abs(sigma - sigma.T)) > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(sigma)))):
        raise InvariantViolationError("covariance is not symmetric")
    admissibility_check(sigma, tol)
    mean = np.zeros(sigma.shape[0]) if mu is None else np.asarray(mu, dtype=float)
    if mean.shape != (sigma.shape[0],):
        raise InvariantViolationError(f"mean of shape {mean.shape} does not match covariance {sigma.shape}")
    return GaussianState(mu=mean, Sigma=0.5 * (sigma + sigma.T))


def is_admissible(Sigma, tol: float = SYMPLECTIC_TOL) -> bool:
    try:
        admissibility_check(np.asarray(Sigma, dtype=float), tol)
    except (AdmissibilityError, InvariantViolationError):
        return False
    return True


def symplectic_eigenvalues(Sigma) -> np.ndarray:
    """Moduli of the eigenvalues of i nu Sigma, one per mode, ascending."""
    sigma = np.asarray(Sigma, dtype=float)
    nu = symplectic_form(sigma.shape[0] // 2)
    values = np.sort(np.abs(np.linalg.eigvals(1j * nu @ sigma)))
    return values[::2]


def thermal_state(n_mean: float, m: int = 1) -> GaussianState:
    """Thermal state with mean photon number N per mode: Sigma = (2N + 1) I."""
    if n_mean < 0:
        raise AdmissibilityError(f"mean photon number must be nonnegative, got {n_mean}", n_mean)
    return validate_gaussian((2.0 * n_mean + 1.0) * np.eye(2 * m), np.zeros(2 * m))


def thermal_p_display(n_mean: float, z: np.ndarray) -> np.ndarray:
    """2 / (pi (2N+1)) exp(-2 |z|^2 / (2N+1)) for single-mode points z of shape (..., 2)."""
    z = np.asarray(z, dtype=float)
    width = 2.0 * n_mean + 1.0
    return 2.0 / (np.pi * width) * np.exp(-2.0 * np.sum(z**2, axis=-1) / width)


def wigner_pdf(state: GaussianState, z) -> Union[float, np.ndarray]:
    """Wigner density at z; z may carry leading batch axes."""
    z = np.asarray(z, dtype=float)
    if z.shape[-1] != state.phase_dim:
        raise InvariantViolationError(f"points must have {state.phase_dim} coordinates, got {z.shape[-1]}")
    diff = z - state.mu
    sigma_inv = np.linalg.inv(state.Sigma)
    quad = np.einsum("...i,ij,...j->...", diff, sigma_inv, diff)
    norm = (2.0 * np.pi) ** state.m * np.sqrt(np.linalg.det(state.Sigma))
    out = np.exp(-0.5 * quad) / norm
    return float(out) if out.ndim == 0 else out


def characteristic_params(state: GaussianState) -> tuple[np.ndarray, np.ndarray]:
    """(gamma, d) = (2 Sigma, mu)."""
    return 2.0 * state.Sigma, state.mu.copy()


def characteristic_fn(state: GaussianState, xi) -> Union[complex, np.ndarray]:
    """chi(xi) = exp(-1/4 xi^T gamma xi + i d.xi)."""
    xi = np.asarray(xi, dtype=float)
    gamma, d = characteristic_params(state)
    quad = np.einsum("...i,ij,...j->...", xi, gamma, xi)
    out = np.exp(-0.25 * quad + 1j * (xi @ d))
    return complex(out) if out.ndim == 0 else out


def wigner_grid(state: GaussianState, xs, xis) -> np.ndarray:
    """Rows (x, xi, W) over the rectangular grid xs x xis of a single mode."""
    if state.m != 1:
        raise InvariantViolationError("wigner_grid is defined for single-mode states")
    xx, pp = np.meshgrid(np.asarray(xs, dtype=float), np.asarray(xis, dtype=float), indexing="ij")
    points = np.stack([xx, pp], axis=-1)
    values = wigner_pdf(state, points)
    return np.column_stack([xx.ravel(), pp.ravel(), np.asarray(values).ravel()])


def mixture_moments(mix: GaussianMixture) -> tuple[np.ndarray, np.ndarray]:
    """Mean sum l_i mu_i and covariance sum l_i Sigma_i + sum l_i mu_i mu_i^T - mu mu^T."""
    weights = np.asarray(mix.weights, dtype=float)
    mus = np.stack([c.mu for c in mix.components])
    sigmas = np.stack([c.Sigma for c in mix.components])
    mean = weights @ mus
    within = np.einsum("i,ijk->jk", weights, sigmas)
    second = np.einsum("i,ij,ik->jk", weights, mus, mus)
    return mean, within + second - np.outer(mean, mean)


def mixture_correction(mix: GaussianMixture) -> np.ndarray:
    """The between-component term sum l_i mu_i mu_i^T - mu mu^T (PSD)."""
    mean, cov = mixture_moments(mix)
    within = sum(w * c.Sigma for w, c in zip(mix.weights, mix.components))
    return cov - within


def block_diagonal_state(*states: GaussianState) -> GaussianState:
    """Tensor product of independent modes: Sigma blocks on the diagonal, means stacked."""
    if not states:
        raise InvariantViolationError("at least one state is required")
    sigma = block_diag(*[s.Sigma for s in states])
    mu = np.concatenate([s.mu for s in states])
    return validate_gaussian(sigma, mu)


def state_to_theta(state: GaussianState) -> np.ndarray:
    """Coordinates (mu, upper triangle of Sigma row-major)."""
    rows, cols = np.triu_indices(state.phase_dim)
    return np.concatenate([state.mu, state.Sigma[rows, cols]])


def theta_to_arrays(theta, m: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of state_to_theta without admissibility checks."""
    theta = np.asarray(theta, dtype=float)
    n = 2 * m
    expected = n + n * (n + 1) // 2
    if theta.shape != (expected,):
        raise InvariantViolationError(f"expected {expected} Gaussian coordinates for m={m}, got {theta.shape}")
    mu = theta[:n].copy()
    sigma = np.zeros((n, n))
    rows, cols = np.triu_indices(n)
    sigma[rows, cols] = theta[n:]
    sigma[cols, rows] = theta[n:]
    return mu, sigma


def theta_to_state(theta, m: int = 1) -> GaussianState:
    mu, sigma = theta_to_arrays(theta, m)
    return validate_gaussian(sigma, mu)
