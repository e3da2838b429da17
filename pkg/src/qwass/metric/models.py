"""Parametric families theta -> state and the model registry."""

from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np

from ..clifford import SIGMA_X, build_clifford
from ..exceptions import DomainExitError, InvariantViolationError
from ..gaussian import gaussian_info_matrix, is_admissible, theta_to_arrays, theta_to_state
from ..lindblad import DifferentialStructure, Multiplication, fermionic_structure
from ..models import DensityOperator, TraceConvention
from ..settings import FERMIONIC_THETA_MARGIN, FAITHFUL_EPS
from .closed_form import depolarizing_info_closed_form, fermionic_info_closed_form


class ParametricModel(ABC):
    """A finite-dimensional parameter space with the Wasserstein information matrix pulled back to it."""

    name: str = "model"
    dim_params: int = 1

    def __init__(self, G_theta: Optional[np.ndarray] = None):
        if G_theta is None:
            G_theta = np.eye(self.dim_params)
        G_theta = np.atleast_2d(np.asarray(G_theta, dtype=float))
        if G_theta.shape != (self.dim_params, self.dim_params):
            raise InvariantViolationError(f"G_theta must be {self.dim_params}x{self.dim_params}")
        if np.max(np.abs(G_theta - G_theta.T)) > 1e-12 or np.linalg.eigvalsh(G_theta)[0] <= 0:
            raise InvariantViolationError("G_theta must be symmetric positive definite")
        self.G_theta = G_theta

    def as_theta(self, theta) -> np.ndarray:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if theta.shape != (self.dim_params,):
            raise InvariantViolationError(f"{self.name} takes {self.dim_params} parameters, got shape {theta.shape}")
        return theta

    @abstractmethod
    def in_domain(self, theta) -> bool: ...

    def check_domain(self, theta, step_index: Optional[int] = None) -> np.ndarray:
        theta = self.as_theta(theta)
        if not self.in_domain(theta):
            raise DomainExitError(
                f"theta = {theta.tolist()} lies outside the domain of {self.name}",
                last_valid=None,
                step_index=step_index,
            )
        return theta

    @property
    def has_closed_form(self) -> bool:
        return False

    def closed_form(self, theta) -> Optional[np.ndarray]:
        """Reference G_W when a closed form is known."""
        return None


class DensityModel(ParametricModel):
    """theta -> faithful density operator, with a transport structure."""

    structure: DifferentialStructure

    @abstractmethod
    def state(self, theta) -> DensityOperator: ...

    def derivative(self, theta) -> Optional[list[np.ndarray]]:
        """Analytic partial derivatives, or None to use finite differences."""
        return None


class FermionicQubitModel(DensityModel):
    """rho(theta) = id + theta sigma_x on one fermionic mode, tau normalized."""

    dim_params = 1

    def __init__(
        self,
        multiplication: Multiplication = Multiplication.KUBO_MORI,
        margin: float = FERMIONIC_THETA_MARGIN,
        G_theta: Optional[np.ndarray] = None,
    ):
        super().__init__(G_theta)
        self.multiplication = Multiplication(multiplication)
        self.margin = margin
        self.algebra = build_clifford(1)
        self.structure = fermionic_structure(self.algebra, self.multiplication)
        suffix = "" if self.multiplication is Multiplication.KUBO_MORI else "-ac"
        self.name = f"fermionic-n1{suffix}"

    def in_domain(self, theta) -> bool:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        return bool(np.all(np.isfinite(theta)) and np.all(np.abs(theta) <= 1.0 - self.margin))

    def state(self, theta) -> DensityOperator:
        t = float(self.check_domain(theta)[0])
        return DensityOperator.from_matrix(np.eye(2) + t * SIGMA_X, TraceConvention.NORMALIZED)

    def derivative(self, theta) -> list[np.ndarray]:
        self.check_domain(theta)
        return [SIGMA_X.copy()]

    @property
    def has_closed_form(self) -> bool:
        return True

    def closed_form(self, theta) -> np.ndarray:
        t = float(self.as_theta(theta)[0])
        g = fermionic_info_closed_form(t, self.multiplication)
        return self.G_theta.T @ np.array([[g]]) @ self.G_theta


class DepolarizingModel(DensityModel):
    """rho(theta) = e^-theta rho_in + (1 - e^-theta) omega on two fermionic modes.

    Uses the anticommutator multiplication with the two-mode fermionic
    gradients. States keep the trace of rho_in.
    """

    dim_params = 1

    def __init__(
        self,
        initial: Optional[np.ndarray] = None,
        limit: Optional[np.ndarray] = None,
        G_theta: Optional[np.ndarray] = None,
        name: str = "depolarizing-n2",
    ):
        super().__init__(G_theta)
        self.algebra = build_clifford(2)
        q10 = self.algebra.monomial((1, 0))
        q01 = self.algebra.monomial((0, 1))
        eye = self.algebra.identity
        self.initial = 0.5 * (eye + q10) if initial is None else np.asarray(initial, dtype=complex)
        self.limit = 0.5 * (eye + q01) if limit is None else np.asarray(limit, dtype=complex)
        mass = TraceConvention.NORMALIZED.trace(self.initial).real
        if abs(TraceConvention.NORMALIZED.trace(self.limit).real - mass) > 1e-12:
            raise InvariantViolationError("input and limit states must have the same trace")
        self.mass = float(mass)
        self.structure = fermionic_structure(self.algebra, Multiplication.ANTICOMMUTATOR)
        self.name = name
        self._default_pair = initial is None and limit is None

    def in_domain(self, theta) -> bool:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if not (np.all(np.isfinite(theta)) and theta[0] > 0):
            return False
        matrix = self._matrix(float(theta[0]))
        return bool(np.linalg.eigvalsh(matrix)[0] >= FAITHFUL_EPS)

    def _matrix(self, t: float) -> np.ndarray:
        a = np.exp(-t)
        return a * self.initial + (1.0 - a) * self.limit

    def state(self, theta) -> DensityOperator:
        t = float(self.check_domain(theta)[0])
        return DensityOperator.from_matrix(self._matrix(t), TraceConvention.NORMALIZED, mass=self.mass)

    def derivative(self, theta) -> list[np.ndarray]:
        t = float(self.check_domain(theta)[0])
        return [np.exp(-t) * (self.limit - self.initial)]

    @property
    def has_closed_form(self) -> bool:
        return self._default_pair

    def closed_form(self, theta) -> Optional[np.ndarray]:
        if not self._default_pair:
            return None
        g = depolarizing_info_closed_form(float(self.as_theta(theta)[0]))
        return self.G_theta.T @ np.array([[g]]) @ self.G_theta


class CallableDensityModel(DensityModel):
    """Wraps a user map theta -> matrix."""

    def __init__(
        self,
        state_fn: Callable[[np.ndarray], np.ndarray],
        structure: DifferentialStructure,
        dim_params: int,
        domain_fn: Optional[Callable[[np.ndarray], bool]] = None,
        derivative_fn: Optional[Callable[[np.ndarray], list[np.ndarray]]] = None,
        mass: float = 1.0,
        G_theta: Optional[np.ndarray] = None,
        name: str = "custom",
    ):
        self.dim_params = dim_params
        super().__init__(G_theta)
        self.state_fn = state_fn
        self.structure = structure
        self.domain_fn = domain_fn
        self.derivative_fn = derivative_fn
        self.mass = mass
        self.name = name

    def in_domain(self, theta) -> bool:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if not np.all(np.isfinite(theta)):
            return False
        if self.domain_fn is not None and not self.domain_fn(theta):
            return False
        try:
            values = np.linalg.eigvalsh(np.asarray(self.state_fn(theta), dtype=complex))
        except np.linalg.LinAlgError:
            return False
        return bool(values[0] >= FAITHFUL_EPS)

    def state(self, theta) -> DensityOperator:
        theta = self.check_domain(theta)
        return DensityOperator.from_matrix(self.state_fn(theta), self.structure.convention, mass=self.mass)

    def derivative(self, theta) -> Optional[list[np.ndarray]]:
        if self.derivative_fn is None:
            return None
        return [np.asarray(d, dtype=complex) for d in self.derivative_fn(self.check_domain(theta))]


class GaussianModel(ParametricModel):
    """theta = (mu, upper triangle of Sigma) for m modes; G_W from the Lyapunov metric."""

    def __init__(self, m: int = 1, G_theta: Optional[np.ndarray] = None):
        n = 2 * m
        self.m = m
        self.dim_params = n + n * (n + 1) // 2
        super().__init__(G_theta)
        self.name = "gaussian" if m == 1 else f"gaussian-m{m}"

    def in_domain(self, theta) -> bool:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if theta.shape != (self.dim_params,) or not np.all(np.isfinite(theta)):
            return False
        return is_admissible(theta_to_arrays(theta, self.m)[1])

    def coordinate_matrix(self, theta) -> np.ndarray:
        return gaussian_info_matrix(theta_to_state(self.check_domain(theta), self.m)).coordinate_matrix()


def depolarizing_model(initial: Optional[np.ndarray] = None, limit: Optional[np.ndarray] = None) -> DepolarizingModel:
    return DepolarizingModel(initial, limit)


MODEL_REGISTRY: dict[str, Callable[[], ParametricModel]] = {
    "fermionic-n1": lambda: FermionicQubitModel(Multiplication.KUBO_MORI),
    "fermionic-n1-ac": lambda: FermionicQubitModel(Multiplication.ANTICOMMUTATOR),
    "depolarizing-n2": lambda: DepolarizingModel(),
    "gaussian": lambda: GaussianModel(1),
}


def get_model(name: str) -> ParametricModel:
    """Instantiate a registered model; KeyError lists the known names."""
    try:
        factory = MODEL_REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(MODEL_REGISTRY))
        raise KeyError(f"unknown model '{name}', expected one of: {known}") from None
    return factory()
