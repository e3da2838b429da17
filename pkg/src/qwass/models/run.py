from datetime import datetime
from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..settings import NumericSettings


class Command(str, Enum):
    """CLI subcommands."""

    INFOMATRIX = "infomatrix"
    GEODESIC = "geodesic"
    FLOW = "flow"
    BRIDGE = "bridge"
    WIGNER_GRID = "wigner-grid"
    VALIDATE = "validate"


class OptimizerMode(str, Enum):
    GRAD = "grad"
    MC = "mc"


class RunConfig(BaseModel):
    """Everything a run depends on; echoed next to the artifacts."""

    model_config = ConfigDict(extra="forbid", use_enum_values=True)

    command: Command
    model: Optional[str] = None
    theta0: Optional[list[float]] = None
    theta1: Optional[list[float]] = None
    theta_grid: Optional[list[list[float]]] = None
    steps: int = Field(default=0, ge=0)
    tau: float = Field(default=1e-3, gt=0)
    beta: float = Field(default=0.0, ge=0)
    N: int = Field(default=100, ge=1)
    mode: OptimizerMode = OptimizerMode.GRAD
    seed: Optional[int] = None
    t_end: float = Field(default=1.0, gt=0)
    grid_min: float = -6.0
    grid_max: float = 6.0
    grid_points: int = Field(default=61, ge=1)
    input_path: Optional[str] = None
    kind: Literal["auto", "generator", "operator", "gaussian"] = "auto"
    rho_in_path: Optional[str] = None
    rho_fi_path: Optional[str] = None
    generator_path: Optional[str] = None
    parametric: bool = False
    out: str = "output"
    settings: NumericSettings = Field(default_factory=NumericSettings)

    @field_validator("theta_grid", mode="before")
    @classmethod
    def _wrap_scalars(cls, value):
        if value is None:
            return value
        return [v if isinstance(v, (list, tuple)) else [v] for v in value]

    @model_validator(mode="after")
    def _check_seed(self):
        if self.mode == OptimizerMode.MC.value and self.seed is None:
            raise ValueError("a seed is mandatory for Monte-Carlo mode")
        return self


class RunManifest(BaseModel):
    """Summary written atomically at the end of every run."""

    config: dict
    artifacts: list[str] = Field(default_factory=list)
    wall_clock_seconds: float = 0.0
    checks: dict[str, bool] = Field(default_factory=dict)
    metrics: dict[str, float] = Field(default_factory=dict)
    exit_code: int = 0
    message: str = ""
    started_at: datetime = Field(default_factory=datetime.now)

    @property
    def all_checks_passed(self) -> bool:
        return all(self.checks.values())
