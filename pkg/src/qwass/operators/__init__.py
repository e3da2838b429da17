from .linalg import (
    as_array,
    hermitian_part,
    trace,
    inner,
    trace_norm,
    operator_norm,
    eigh,
    matrix_function,
    log_mean,
    inverse_log_mean,
    double_operator_apply,
)
from .multiplication import (
    kubo_mori_apply,
    anticommutator_apply,
    kubo_mori_quadrature,
    kubo_mori_inverse_quadrature,
    require_faithful,
)
from .lyapunov import lyapunov_solve
from .superop import (
    hermitian_basis,
    superop_matrix,
    superop_build,
    superop_build_and_pinv,
    kernel_dimension,
)

__all__ = [
    "as_array",
    "hermitian_part",
    "trace",
    "inner",
    "trace_norm",
    "operator_norm",
    "eigh",
    "matrix_function",
    "log_mean",
    "inverse_log_mean",
    "double_operator_apply",
    "kubo_mori_apply",
    "anticommutator_apply",
    "kubo_mori_quadrature",
    "kubo_mori_inverse_quadrature",
    "require_faithful",
    "lyapunov_solve",
    "hermitian_basis",
    "superop_matrix",
    "superop_build",
    "superop_build_and_pinv",
    "kernel_dimension",
]
