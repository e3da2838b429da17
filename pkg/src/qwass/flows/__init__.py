from .natural_gradient import (
    entropy_objective,
    numeric_gradient,
    natural_gradient_direction,
    natural_gradient_flow,
    state_space_gradient_step,
)
from .geodesic import InfoCache, geodesic_bvp, euler_lagrange_residual, hamiltonian, geodesic_ivp
from .bridge import (
    StateCoordinates,
    bridge_step_cost,
    bridge_functional,
    sbp_solve,
    sbp_solve_parametric,
    sbp_equivalence_check,
    sbp_beta_sweep,
)
from .dilog import (
    dilog,
    zeta_fn,
    zeta_inverse,
    eta,
    eta_inverse,
    analytic_fermionic_geodesic,
    dilogarithm_curve,
    geodesic_distance_closed_form,
    dilogarithm_curve_action,
)

__all__ = [
    "entropy_objective",
    "numeric_gradient",
    "natural_gradient_direction",
    "natural_gradient_flow",
    "state_space_gradient_step",
    "InfoCache",
    "geodesic_bvp",
    "euler_lagrange_residual",
    "hamiltonian",
    "geodesic_ivp",
    "StateCoordinates",
    "bridge_step_cost",
    "bridge_functional",
    "sbp_solve",
    "sbp_solve_parametric",
    "sbp_equivalence_check",
    "sbp_beta_sweep",
    "dilog",
    "zeta_fn",
    "zeta_inverse",
    "eta",
    "eta_inverse",
    "analytic_fermionic_geodesic",
    "dilogarithm_curve",
    "geodesic_distance_closed_form",
    "dilogarithm_curve_action",
]
