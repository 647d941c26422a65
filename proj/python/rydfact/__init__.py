"""Semiprime factoring through BDD, 3-SAT and MIS reductions with a Rydberg simulator."""

from ._core import (
    RydfactError,
    builtin_graph,
    builtin_names,
    create_instance,
    dimacs,
    divisor_pairs,
    estimate,
    evolve_builtin,
    factor_pairs,
    failed_path_cnf,
    maximum_independent_sets,
    preset_config,
    preset_names,
    run_pipeline,
)

__all__ = [
    "RydfactError",
    "builtin_graph",
    "builtin_names",
    "create_instance",
    "dimacs",
    "divisor_pairs",
    "estimate",
    "evolve_builtin",
    "factor_pairs",
    "failed_path_cnf",
    "maximum_independent_sets",
    "preset_config",
    "preset_names",
    "run_pipeline",
]
