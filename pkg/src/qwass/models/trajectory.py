from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import InvariantViolationError
from .operators import DensityOperator


class WassersteinInfoMatrix(BaseModel):
    """G_W evaluated at one parameter point."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    theta: np.ndarray
    matrix: np.ndarray

    @field_validator("theta", "matrix", mode="before")
    @classmethod
    def _coerce(cls, value):
        return np.atleast_1d(np.array(value, dtype=float))

    @model_validator(mode="after")
    def _check(self):
        d = self.theta.shape[0]
        self.matrix = self.matrix.reshape(d, d)
        scale = max(1.0, float(np.max(np.abs(self.matrix))))
        if np.max(np.abs(self.matrix - self.matrix.T)) > 1e-10 * scale:
            raise InvariantViolationError("information matrix is not symmetric")
        return self

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    @property
    def is_positive_definite(self) -> bool:
        return bool(self.eigenvalues[0] > 0)


class FlowTrajectory(BaseModel):
    """Discrete path theta(t_k) with per-step diagnostics."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    times: np.ndarray
    thetas: np.ndarray
    diagnostics: dict[str, list[float]] = Field(default_factory=dict)
    converged: bool = True
    exited_domain: bool = False
    message: str = ""

    @field_validator("times", mode="before")
    @classmethod
    def _coerce_times(cls, value):
        return np.array(value, dtype=float)

    @field_validator("thetas", mode="before")
    @classmethod
    def _coerce_thetas(cls, value):
        arr = np.array(value, dtype=float)
        return arr.reshape(arr.shape[0], -1)

    @model_validator(mode="after")
    def _check(self):
        if self.thetas.shape[0] != self.times.shape[0]:
            raise InvariantViolationError("one parameter vector per time point is required")
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise InvariantViolationError("times must be strictly increasing")
        return self

    @property
    def final(self) -> np.ndarray:
        return self.thetas[-1]

    @property
    def n_points(self) -> int:
        return self.thetas.shape[0]


class BridgePath(BaseModel):
    """Discretized Schrödinger bridge between two faithful states."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    states: list[DensityOperator] = Field(min_length=2)
    beta: float = Field(ge=0)
    functional_value: float
    trace: list[float] = Field(default_factory=list)
    converged: bool = True
    equivalence_residual: Optional[float] = None
    # node coordinates, one row per state
    parameters: Optional[np.ndarray] = None

    @property
    def n_steps(self) -> int:
        return len(self.states) - 1

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, len(self.states))


class EquivalenceReport(BaseModel):
    """Both sides of the bridge reduction identity on one discretized path."""

    beta: float
    n_steps: int
    scheme: str
    lhs: float
    rhs: float
    cross_term: float
    entropy_difference: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)
