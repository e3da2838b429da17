from .models import (
    ParametricModel,
    DensityModel,
    FermionicQubitModel,
    DepolarizingModel,
    CallableDensityModel,
    GaussianModel,
    MODEL_REGISTRY,
    depolarizing_model,
    get_model,
)
from .info import (
    model_derivative,
    score_solve,
    wasserstein_info_matrix,
    info_matrix,
    pullback_metric,
    state_metric,
    path_action,
)
from .closed_form import (
    artanh_ratio,
    fermionic_info_closed_form,
    fermionic_fisher_closed_form,
    fermionic_entropy_closed_form,
    depolarizing_laplacian_block,
    depolarizing_info_closed_form,
    depolarizing_info_printed_form,
)

__all__ = [
    "ParametricModel",
    "DensityModel",
    "FermionicQubitModel",
    "DepolarizingModel",
    "CallableDensityModel",
    "GaussianModel",
    "MODEL_REGISTRY",
    "depolarizing_model",
    "get_model",
    "model_derivative",
    "score_solve",
    "wasserstein_info_matrix",
    "info_matrix",
    "pullback_metric",
    "state_metric",
    "path_action",
    "artanh_ratio",
    "fermionic_info_closed_form",
    "fermionic_fisher_closed_form",
    "fermionic_entropy_closed_form",
    "depolarizing_laplacian_block",
    "depolarizing_info_closed_form",
    "depolarizing_info_printed_form",
]
