from .generators import (
    Picture,
    fermionic_generator,
    detailed_balance_generator,
    damped_qubit_generator,
    generator_basis,
    validate_generator,
    require_valid,
    heisenberg_apply,
    lindblad_superoperator,
    lindblad_apply,
    semigroup_evolve,
)
from .structure import (
    Multiplication,
    DifferentialStructure,
    PreparedState,
    TransportLaplacian,
    fermionic_structure,
    lindblad_structure,
    weighted_fkm_apply,
    laplacian_apply,
    laplacian_build,
    relative_entropy,
    fisher_information,
    kms_inner,
    dirichlet_form,
)

__all__ = [
    "Picture",
    "fermionic_generator",
    "detailed_balance_generator",
    "damped_qubit_generator",
    "generator_basis",
    "validate_generator",
    "require_valid",
    "heisenberg_apply",
    "lindblad_superoperator",
    "lindblad_apply",
    "semigroup_evolve",
    "Multiplication",
    "DifferentialStructure",
    "PreparedState",
    "TransportLaplacian",
    "fermionic_structure",
    "lindblad_structure",
    "weighted_fkm_apply",
    "laplacian_apply",
    "laplacian_build",
    "relative_entropy",
    "fisher_information",
    "kms_inner",
    "dirichlet_form",
]
