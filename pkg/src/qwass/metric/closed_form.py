"""Closed-form references for the single-mode fermionic and depolarizing families."""

import numpy as np

from ..exceptions import DomainExitError
from ..lindblad import Multiplication
from ..settings import SERIES_THRESHOLD


def artanh_ratio(theta: float) -> float:
    """artanh(theta)/theta, with its series 1 + theta^2/3 + theta^4/5 near zero."""
    if abs(theta) >= 1.0:
        raise DomainExitError(f"artanh(theta)/theta needs |theta| < 1, got {theta}", last_valid=None)
    if abs(theta) < SERIES_THRESHOLD:
        t2 = theta * theta
        return 1.0 + t2 / 3.0 + t2 * t2 / 5.0
    return float(np.arctanh(theta) / theta)


def fermionic_info_closed_form(theta: float, multiplication: Multiplication = Multiplication.KUBO_MORI) -> float:
    """G_W of rho = id + theta sigma_x: artanh(theta)/theta, or 1 for the anticommutator."""
    if Multiplication(multiplication) is Multiplication.ANTICOMMUTATOR:
        if abs(theta) >= 1.0:
            raise DomainExitError(f"|theta| must be below 1, got {theta}", last_valid=None)
        return 1.0
    return artanh_ratio(theta)


def fermionic_fisher_closed_form(theta: float) -> float:
    """Relative Fisher information theta * artanh(theta) of id + theta sigma_x against id."""
    if abs(theta) >= 1.0:
        raise DomainExitError(f"|theta| must be below 1, got {theta}", last_valid=None)
    return float(theta * np.arctanh(theta))


def fermionic_entropy_closed_form(theta: float) -> float:
    """tau(rho log rho) for rho = id + theta sigma_x."""
    if abs(theta) >= 1.0:
        raise DomainExitError(f"|theta| must be below 1, got {theta}", last_valid=None)
    return 0.5 * float((1 + theta) * np.log1p(theta) + (1 - theta) * np.log1p(-theta))


def depolarizing_laplacian_block(theta: float) -> np.ndarray:
    """-Delta on span{Q10, Q01, Q11} for the default depolarizing state, in that order."""
    a = np.exp(-theta)
    b = 1.0 - a
    return 0.5 * np.array([[1.0, 0.0, b], [0.0, 1.0, -a], [b, -a, 2.0]])


def depolarizing_info_closed_form(theta: float) -> float:
    """(3 + 4e^-theta - 4e^-2theta) / (2e^2theta + 4e^theta - 4)."""
    if theta <= 0:
        raise DomainExitError(f"the depolarizing family needs theta > 0, got {theta}", last_valid=None)
    e = np.exp(theta)
    return float((3.0 + 4.0 / e - 4.0 / e**2) / (2.0 * e**2 + 4.0 * e - 4.0))


def depolarizing_info_printed_form(theta: float) -> float:
    """(3 - 4e^-2theta + 6e^-theta) / (4e^theta + 2(e^2theta - 1)), kept for comparison."""
    e = np.exp(theta)
    return float((3.0 - 4.0 / e**2 + 6.0 / e) / (4.0 * e + 2.0 * (e**2 - 1.0)))
