"""Dilogarithm and the closed-form geodesics of the single-mode fermionic family.

With G_W(theta) = artanh(theta)/theta the geodesic equation conserves
G_W theta'^2, so geodesics are straight in eta(x) = int_0^x sqrt(artanh(s)/s) ds.
zeta(x) = (Li2(x) - Li2(-x))/2 has zeta' = artanh(x)/x; the curve that is
straight in zeta conserves G_W theta' instead and is kept as a comparison curve.
"""

from functools import lru_cache
from typing import Callable, Union

import numpy as np
from scipy.integrate import quad

from ..exceptions import DomainExitError
from ..metric.closed_form import artanh_ratio

PI2_6 = np.pi**2 / 6.0
ZETA_LIMIT = np.pi**2 / 8.0  # zeta(1)
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 200
EDGE = 1.0 - 1e-15

ArrayLike = Union[float, np.ndarray]


def _li2_series(x: float) -> float:
    total, term_power, k = 0.0, x, 1
    while True:
        term = term_power / (k * k)
        total += term
        if abs(term) < 1e-17 * max(1.0, abs(total)):
            return total
        k += 1
        term_power *= x


def _dilog_scalar(x: float) -> float:
    if x > 1.0:
        raise DomainExitError(f"real dilogarithm is defined for x <= 1, got {x}", last_valid=None)
    if x == 1.0:
        return PI2_6
    if abs(x) <= 0.5:
        return _li2_series(x)
    if x > 0.5:
        # reflection
        return PI2_6 - np.log(x) * np.log1p(-x) - _li2_series(1.0 - x)
    if x >= -1.0:
        # Landen: x/(x-1) lies in [1/3, 1/2)
        return -_li2_series(x / (x - 1.0)) - 0.5 * np.log1p(-x) ** 2
    # inversion for x < -1
    return -PI2_6 - 0.5 * np.log(-x) ** 2 - _dilog_scalar(1.0 / x)


def dilog(x: ArrayLike) -> ArrayLike:
    """Li2(x) = sum_k x^k / k^2 continued to x <= 1."""
    if np.ndim(x) == 0:
        return float(_dilog_scalar(float(x)))
    return np.array([_dilog_scalar(float(v)) for v in np.ravel(x)]).reshape(np.shape(x))


def _check_open_interval(x: float) -> None:
    if not -1.0 < x < 1.0:
        raise DomainExitError(f"|theta| must be below 1, got {x}", last_valid=None)


def zeta_fn(x: float) -> float:
    """(Li2(x) - Li2(-x)) / 2, odd and strictly increasing on (-1, 1)."""
    _check_open_interval(x)
    return 0.5 * (_dilog_scalar(x) - _dilog_scalar(-x))


def _bracketed_newton(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    y: float,
    lo: float,
    hi: float,
) -> float:
    """Solve f(x) = y for increasing f on [lo, hi]; falls back to bisection outside the bracket."""
    x = 0.0 if lo < 0.0 < hi else 0.5 * (lo + hi)
    for _ in range(NEWTON_MAX_ITER):
        r = f(x) - y
        if r == 0.0:
            return x
        if r > 0:
            hi = x
        else:
            lo = x
        step = r / fprime(x)
        candidate = x - step
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        if abs(candidate - x) <= NEWTON_TOL * max(1.0, abs(x)):
            return candidate
        x = candidate
    return x


def zeta_inverse(y: float) -> float:
    if abs(y) >= ZETA_LIMIT:
        raise DomainExitError(f"zeta takes values in (-pi^2/8, pi^2/8), got {y}", last_valid=None)
    return _bracketed_newton(zeta_fn, artanh_ratio, y, -EDGE, EDGE)


def eta(x: float) -> float:
    """int_0^x sqrt(artanh(s)/s) ds."""
    _check_open_interval(x)
    value, _ = quad(lambda s: np.sqrt(artanh_ratio(s)), 0.0, x, epsabs=1e-14, epsrel=1e-13, limit=200)
    return float(value)


@lru_cache(maxsize=1)
def _eta_limit() -> float:
    return eta(EDGE)


def eta_inverse(y: float) -> float:
    limit = _eta_limit()
    if abs(y) >= limit:
        raise DomainExitError(f"eta takes values in (-{limit:.6g}, {limit:.6g}), got {y}", last_valid=None)
    return _bracketed_newton(eta, lambda s: np.sqrt(artanh_ratio(s)), y, -EDGE, EDGE)


def _interpolate(forward, inverse, theta0: float, theta1: float, t: ArrayLike) -> ArrayLike:
    a, b = forward(theta0), forward(theta1)
    if np.ndim(t) == 0:
        t = float(t)
        if t == 0.0:
            return float(theta0)
        if t == 1.0:
            return float(theta1)
        return inverse(t * b + (1.0 - t) * a)
    return np.array([_interpolate(forward, inverse, theta0, theta1, float(s)) for s in np.ravel(t)])


def analytic_fermionic_geodesic(theta0: float, theta1: float, t: ArrayLike) -> ArrayLike:
    """Minimizing geodesic eta^-1(t eta(theta1) + (1 - t) eta(theta0))."""
    return _interpolate(eta, eta_inverse, theta0, theta1, t)


def dilogarithm_curve(theta0: float, theta1: float, t: ArrayLike) -> ArrayLike:
    """zeta^-1(t zeta(theta1) + (1 - t) zeta(theta0))."""
    return _interpolate(zeta_fn, zeta_inverse, theta0, theta1, t)


def geodesic_distance_closed_form(theta0: float, theta1: float) -> float:
    """W(theta0, theta1) = |eta(theta1) - eta(theta0)|; its square is the minimal action."""
    return abs(eta(theta1) - eta(theta0))


def dilogarithm_curve_action(theta0: float, theta1: float) -> float:
    """Action of the zeta-straight curve: (zeta(theta1) - zeta(theta0)) (theta1 - theta0)."""
    return (zeta_fn(theta1) - zeta_fn(theta0)) * (theta1 - theta0)
