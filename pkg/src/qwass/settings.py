"""Numeric settings for qwass."""

import os
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

# Spectral tolerances
HERMITIAN_TOL = 1e-12  # relative to max-norm
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-12
FAITHFUL_EPS = 1e-10
COINCIDENCE_RTOL = 1e-12  # log-mean analytic limit below this gap
BASIS_GRAM_TOL = 1e-10
EXPANSION_TOL = 1e-10
MODULAR_TOL = 1e-10
KERNEL_RTOL = 1e-9  # singular values below this * sigma_max count as kernel
PRECONDITION_TOL = 1e-10
SYMPLECTIC_TOL = 1e-10

# Quadrature oracle
QUADRATURE_NODES = 64

# Finite differences
FD_REL_STEP = 1e-6
MAX_STEP_HALVINGS = 30

# Parameter domains
FERMIONIC_THETA_MARGIN = 1e-6
SERIES_THRESHOLD = 1e-4  # artanh(x)/x via series below this

# Optimizers
DEFAULT_MAX_ITER = 500
DEFAULT_GRAD_TOL = 1e-10
MC_STEP_DECAY = 0.95
MC_EPOCHS = 200
MC_INITIAL_STEP = 0.05
ARMIJO_C = 1e-4

# Outputs
CSV_SIGNIFICANT_DIGITS = 17
NUM_THREADS_ENV = "QWASS_NUM_THREADS"
DEFAULT_NUM_THREADS = 4


class NumericSettings(BaseModel):
    """Single record of tolerances, step sizes and seeds passed down from the CLI."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    hermitian_tol: float = Field(default=HERMITIAN_TOL, gt=0)
    trace_tol: float = Field(default=TRACE_TOL, gt=0)
    faithful_eps: float = Field(default=FAITHFUL_EPS, ge=0)
    coincidence_rtol: float = Field(default=COINCIDENCE_RTOL, gt=0)
    kernel_rtol: float = Field(default=KERNEL_RTOL, gt=0)
    quadrature_nodes: int = Field(default=QUADRATURE_NODES, ge=2)
    fd_rel_step: float = Field(default=FD_REL_STEP, gt=0)
    max_step_halvings: int = Field(default=MAX_STEP_HALVINGS, ge=0)
    max_iter: int = Field(default=DEFAULT_MAX_ITER, ge=0)
    grad_tol: float = Field(default=DEFAULT_GRAD_TOL, gt=0)
    mc_epochs: int = Field(default=MC_EPOCHS, ge=0)
    mc_initial_step: float = Field(default=MC_INITIAL_STEP, gt=0)
    mc_step_decay: float = Field(default=MC_STEP_DECAY, gt=0, le=1)
    seed: Optional[int] = None


DEFAULT_SETTINGS = NumericSettings()


def resolve_num_threads(default: int = DEFAULT_NUM_THREADS) -> int:
    """Worker cap from QWASS_NUM_THREADS, falling back to the default."""
    raw = os.getenv(NUM_THREADS_ENV)
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return max(1, value)

