from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .operators import DensityOperator, OperatorBasis


class JumpTerm(BaseModel):
    """One jump operator V_j with Bohr frequency omega_j and the index of its adjoint term."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    V: np.ndarray
    omega: float = 0.0
    adjoint: int

    @field_validator("V", mode="before")
    @classmethod
    def _coerce(cls, value):
        return np.asarray(value, dtype=complex)


class LindbladGenerator(BaseModel):
    """Detailed-balance generator data {(V_j, omega_j)} with invariant state sigma.

    When `grading` is set, the derivatives use the graded left action
    V_j A - grading(A) V_j and the generator is the graded one.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    sigma: DensityOperator
    terms: list[JumpTerm]
    grading: Optional[Callable[[np.ndarray], np.ndarray]] = Field(default=None, exclude=True)
    basis: Optional[OperatorBasis] = Field(default=None, exclude=True)
    name: str = "generator"

    @property
    def graded(self) -> bool:
        return self.grading is not None

    @property
    def dim(self) -> int:
        return self.sigma.dim

    def left_action(self, a: np.ndarray) -> np.ndarray:
        """l(A): identity for plain generators, the grading for graded ones."""
        if self.grading is None:
            return a
        return self.grading(a)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "sigma": self.sigma.op.to_dict(),
            "convention": self.sigma.trace_convention.value,
            "terms": [
                {
                    "V": {"dim": t.V.shape[0], "re": t.V.real.tolist(), "im": t.V.imag.tolist()},
                    "omega": t.omega,
                    "adjoint": t.adjoint,
                }
                for t in self.terms
            ],
        }


class GeneratorReport(BaseModel):
    """Residual of each detailed-balance condition and the failures found."""

    adjoint_residuals: list[float] = Field(default_factory=list)
    frequency_residuals: list[float] = Field(default_factory=list)
    modular_residuals: list[float] = Field(default_factory=list)
    failures: list[str] = Field(default_factory=list)
    tol: float

    @property
    def valid(self) -> bool:
        return not self.failures

    @property
    def max_residual(self) -> float:
        values = self.adjoint_residuals + self.frequency_residuals + self.modular_residuals
        return max(values) if values else 0.0
