"""Wasserstein metric on Gaussian states and its closed-form companions."""

from typing import Union

import numpy as np

from ..models import GaussianState, GaussianTangent
from ..operators import lyapunov_solve
from .states import validate_gaussian

TangentLike = Union[GaussianTangent, tuple]


def _as_tangent(xi: TangentLike) -> GaussianTangent:
    if isinstance(xi, GaussianTangent):
        return xi
    mu_dot, sigma_dot = xi
    return GaussianTangent(mu_dot=mu_dot, Sigma_dot=sigma_dot)


class GaussianMetric:
    """g(xi, eta) = <mu_xi, mu_eta> + tr(S_xi Sigma S_eta) with {S_xi, Sigma} = Sigma_xi."""

    def __init__(self, state: GaussianState):
        self.state = state
        self.Sigma = state.Sigma

    def lyapunov(self, sigma_dot: np.ndarray) -> np.ndarray:
        return lyapunov_solve(self.Sigma, sigma_dot)

    def lyapunov_residual(self, sigma_dot: np.ndarray) -> float:
        s = self.lyapunov(sigma_dot)
        return float(np.max(np.abs(s @ self.Sigma + self.Sigma @ s - sigma_dot)))

    def __call__(self, xi: TangentLike, eta: TangentLike) -> float:
        xi, eta = _as_tangent(xi), _as_tangent(eta)
        s_xi = self.lyapunov(xi.Sigma_dot)
        s_eta = s_xi if eta is xi else self.lyapunov(eta.Sigma_dot)
        return float(xi.mu_dot @ eta.mu_dot + np.trace(s_xi @ self.Sigma @ s_eta))

    def norm_squared(self, mu_dot: np.ndarray, sigma_dot: np.ndarray) -> float:
        s = self.lyapunov(sigma_dot)
        return float(mu_dot @ mu_dot + np.trace(s @ self.Sigma @ s))

    def coordinate_matrix(self) -> np.ndarray:
        """Matrix of g in the coordinates (mu, upper triangle of Sigma)."""
        n = self.state.phase_dim
        rows, cols = np.triu_indices(n)
        size = n + rows.size
        directions = []
        for a in range(size):
            mu_dot = np.zeros(n)
            sigma_dot = np.zeros((n, n))
            if a < n:
                mu_dot[a] = 1.0
            else:
                i, j = rows[a - n], cols[a - n]
                sigma_dot[i, j] = sigma_dot[j, i] = 1.0
            directions.append((mu_dot, sigma_dot, self.lyapunov(sigma_dot)))
        g = np.zeros((size, size))
        for a, (mu_a, _, s_a) in enumerate(directions):
            for b in range(a, size):
                mu_b, _, s_b = directions[b]
                g[a, b] = g[b, a] = mu_a @ mu_b + np.trace(s_a @ self.Sigma @ s_b)
        return g


def gaussian_info_matrix(state: GaussianState) -> GaussianMetric:
    return GaussianMetric(state)


def _psd_sqrt(a: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(0.5 * (a + a.T))
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.T


def bures_wasserstein_distance(s0: GaussianState, s1: GaussianState) -> float:
    """sqrt(|mu0 - mu1|^2 + tr(S0 + S1 - 2 (S0^1/2 S1 S0^1/2)^1/2))."""
    root0 = _psd_sqrt(s0.Sigma)
    cross = _psd_sqrt(root0 @ s1.Sigma @ root0)
    bures = np.trace(s0.Sigma + s1.Sigma - 2.0 * cross)
    mean = float(np.sum((s0.mu - s1.mu) ** 2))
    return float(np.sqrt(max(mean + bures, 0.0)))


def bures_wasserstein_map(s0: GaussianState, s1: GaussianState) -> np.ndarray:
    """Optimal linear map A = S0^-1/2 (S0^1/2 S1 S0^1/2)^1/2 S0^-1/2."""
    root0 = _psd_sqrt(s0.Sigma)
    inv_root0 = np.linalg.inv(root0)
    return inv_root0 @ _psd_sqrt(root0 @ s1.Sigma @ root0) @ inv_root0


def mccann_interpolation(s0: GaussianState, s1: GaussianState, t: float) -> GaussianState:
    """Displacement interpolation ((1-t) I + t A) Sigma0 ((1-t) I + t A), means linear."""
    a = bures_wasserstein_map(s0, s1)
    m = (1.0 - t) * np.eye(s0.phase_dim) + t * a
    sigma = m @ s0.Sigma @ m.T
    return validate_gaussian(0.5 * (sigma + sigma.T), (1.0 - t) * s0.mu + t * s1.mu)
