from .algebra import (
    CliffordAlgebra,
    build_clifford,
    car_residual,
    expand,
    grading,
    derivative,
    adjoint_derivative,
    gradient,
    divergence,
    number_operator,
    semigroup_apply,
    vector_inner,
    dirichlet_form,
    plain_fermionic_generator,
    graded_fermionic_generator,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
)

__all__ = [
    "CliffordAlgebra",
    "build_clifford",
    "car_residual",
    "expand",
    "grading",
    "derivative",
    "adjoint_derivative",
    "gradient",
    "divergence",
    "number_operator",
    "semigroup_apply",
    "vector_inner",
    "dirichlet_form",
    "plain_fermionic_generator",
    "graded_fermionic_generator",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
]
