"""Non-commutative multiplication operators L_rho and their inverses."""

from typing import Optional

import numpy as np
from scipy.integrate import quad_vec

from ..exceptions import FaithfulnessError
from ..models import Spectrum
from ..settings import FAITHFUL_EPS, QUADRATURE_NODES
from .linalg import OperatorLike, as_array, double_operator_apply, eigh, inverse_log_mean, log_mean


def _spectrum(rho) -> Spectrum:
    return rho if isinstance(rho, Spectrum) else eigh(rho)


def require_faithful(spectrum: Spectrum, eps: float = FAITHFUL_EPS, step_index: Optional[int] = None) -> None:
    lam_min = float(spectrum.values[0])
    if lam_min < eps:
        where = f" at step {step_index}" if step_index is not None else ""
        raise FaithfulnessError(
            f"state is not faithful{where}: min eigenvalue {lam_min:.3e} < {eps:.1e}",
            min_eigenvalue=lam_min,
            step_index=step_index,
        )


def kubo_mori_multiplier(left: Spectrum, right: Spectrum, inverse: bool = False) -> np.ndarray:
    a = left.values[:, None]
    b = right.values[None, :]
    return inverse_log_mean(a, b) if inverse else log_mean(a, b)


def kubo_mori_apply(
    rho1: OperatorLike,
    rho2: OperatorLike,
    t: OperatorLike,
    inverse: bool = False,
    eps: float = FAITHFUL_EPS,
) -> np.ndarray:
    """Feynman-Kubo-Mori operator int_0^1 rho1^(1-s) T rho2^s ds, or its inverse.

    Evaluated in the eigenbases of rho1 and rho2 with the logarithmic-mean
    multiplier. T may be any square matrix.
    """
    left, right = _spectrum(rho1), _spectrum(rho2)
    if inverse:
        require_faithful(left, eps)
        require_faithful(right, eps)
    return double_operator_apply(left, right, as_array(t), kubo_mori_multiplier(left, right, inverse))


def anticommutator_apply(
    rho: OperatorLike,
    t: OperatorLike,
    inverse: bool = False,
    eps: float = FAITHFUL_EPS,
) -> np.ndarray:
    """Forward: (T rho + rho T) / 2. Inverse: X with (X rho + rho X) / 2 = T."""
    tm = as_array(t)
    if not inverse:
        r = as_array(rho) if not isinstance(rho, Spectrum) else rho.reconstruct()
        return 0.5 * (tm @ r + r @ tm)
    spectrum = _spectrum(rho)
    require_faithful(spectrum, eps)
    lam = spectrum.values
    multiplier = 2.0 / (lam[:, None] + lam[None, :])
    return double_operator_apply(spectrum, spectrum, tm, multiplier)


def kubo_mori_quadrature(
    rho1: OperatorLike,
    rho2: OperatorLike,
    t: OperatorLike,
    nodes: int = QUADRATURE_NODES,
) -> np.ndarray:
    """Gauss-Legendre evaluation of int_0^1 rho1^(1-s) T rho2^s ds."""
    left, right = _spectrum(rho1), _spectrum(rho2)
    x, w = np.polynomial.legendre.leggauss(nodes)
    s_nodes = 0.5 * (x + 1.0)
    tm = as_array(t)
    u1, u2 = left.vectors, right.vectors
    a = np.clip(left.values, 0.0, None)
    b = np.clip(right.values, 0.0, None)
    core = u1.conj().T @ tm @ u2
    acc = np.zeros_like(core)
    for s, weight in zip(s_nodes, w):
        acc += 0.5 * weight * (a[:, None] ** (1.0 - s)) * core * (b[None, :] ** s)
    return u1 @ acc @ u2.conj().T


def kubo_mori_inverse_quadrature(rho1: OperatorLike, rho2: OperatorLike, t: OperatorLike) -> np.ndarray:
    """Adaptive evaluation of int_0^inf (rho1 + s)^-1 T (rho2 + s)^-1 ds."""
    left, right = _spectrum(rho1), _spectrum(rho2)
    require_faithful(left)
    require_faithful(right)
    u1, u2 = left.vectors, right.vectors
    core = u1.conj().T @ as_array(t) @ u2
    a, b = left.values, right.values

    def integrand(s: float) -> np.ndarray:
        return (core / ((a[:, None] + s) * (b[None, :] + s))).ravel()

    real, _ = quad_vec(lambda s: integrand(s).real, 0.0, np.inf, epsabs=1e-13, epsrel=1e-11)
    imag, _ = quad_vec(lambda s: integrand(s).imag, 0.0, np.inf, epsabs=1e-13, epsrel=1e-11)
    acc = (real + 1j * imag).reshape(core.shape)
    return u1 @ acc @ u2.conj().T
