from .states import (
    validate_gaussian,
    is_admissible,
    symplectic_eigenvalues,
    thermal_state,
    thermal_p_display,
    wigner_pdf,
    characteristic_params,
    characteristic_fn,
    wigner_grid,
    mixture_moments,
    mixture_correction,
    block_diagonal_state,
    state_to_theta,
    theta_to_arrays,
    theta_to_state,
)
from .metric import (
    GaussianMetric,
    gaussian_info_matrix,
    bures_wasserstein_distance,
    bures_wasserstein_map,
    mccann_interpolation,
)
from .geodesic import gaussian_action, states_action, gaussian_geodesic

__all__ = [
    "validate_gaussian",
    "is_admissible",
    "symplectic_eigenvalues",
    "thermal_state",
    "thermal_p_display",
    "wigner_pdf",
    "characteristic_params",
    "characteristic_fn",
    "wigner_grid",
    "mixture_moments",
    "mixture_correction",
    "block_diagonal_state",
    "state_to_theta",
    "theta_to_arrays",
    "theta_to_state",
    "GaussianMetric",
    "gaussian_info_matrix",
    "bures_wasserstein_distance",
    "bures_wasserstein_map",
    "mccann_interpolation",
    "gaussian_action",
    "states_action",
    "gaussian_geodesic",
]
