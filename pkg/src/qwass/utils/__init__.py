from .io import (
    atomic_write_text,
    write_json,
    read_json,
    write_csv,
    load_operator,
    save_operator,
    generator_from_dict,
    load_generator,
    save_generator,
    gaussian_from_dict,
    load_gaussian,
    load_run_config,
)
from .optimize import PathOptimum, PathProblem, lbfgs_path, monte_carlo_path
from .parallel import parallel_map

__all__ = [
    "atomic_write_text",
    "write_json",
    "read_json",
    "write_csv",
    "load_operator",
    "save_operator",
    "generator_from_dict",
    "load_generator",
    "save_generator",
    "gaussian_from_dict",
    "load_gaussian",
    "load_run_config",
    "PathOptimum",
    "PathProblem",
    "lbfgs_path",
    "monte_carlo_path",
    "parallel_map",
]
