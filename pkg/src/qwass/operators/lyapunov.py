"""Symmetric Lyapunov equation S Sigma + Sigma S = Q."""

import numpy as np

from ..exceptions import MatrixDomainError


def lyapunov_solve(sigma: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Solve S Sigma + Sigma S = Q for symmetric S, Sigma positive definite.

    Parameters
    ----------
    sigma : ndarray, shape (n, n)
        Real symmetric positive-definite coefficient.
    q : ndarray, shape (n, n)
        Real symmetric right-hand side.

    Returns
    -------
    ndarray, shape (n, n)
        The unique symmetric solution, built with the multiplier
        Q~_ij / (s_i + s_j) in the eigenbasis of Sigma.
    """
    sigma = np.asarray(sigma, dtype=float)
    q = np.asarray(q, dtype=float)
    s, v = np.linalg.eigh(0.5 * (sigma + sigma.T))
    if s[0] <= 0:
        raise MatrixDomainError(f"Lyapunov coefficient is not positive definite: eigenvalue {s[0]:.6g}", float(s[0]))
    q_tilde = v.T @ q @ v
    out = v @ (q_tilde / (s[:, None] + s[None, :])) @ v.T
    return 0.5 * (out + out.T)
