"""Skew information of quantum states and lower bounds on correlation strength.

The library computes a parameterized skew information for a density matrix and
an observable, factors the underlying Gram matrix into sampled coordinate
vectors, and evaluates several families of lower bounds on the squared
correlation between two observables, plus sum-form bounds for collections of
observables.  A CLI drives sweeps, benchmarks and built-in reproductions.
"""

from .bounds_product import (
    BoundInputPair,
    BoundResult,
    bound_ik,
    bound_ik_perm,
    bound_k_prefix,
    bound_k_subset,
    bound_spq,
    bound_spq_perm,
    chain_pairs,
    chain_report,
    convex_combo,
    f_cs,
)
from .bounds_sum import (
    SampledMatrix,
    bound_b2_cell,
    bound_b2_max,
    bound_b2_q,
    bound_lma,
    parallelogram_residual,
    sampled_matrix,
)
from .errors import (
    BlochNormExceededError,
    ChainViolationError,
    CrossCheckError,
    DimensionMismatchError,
    ExampleAssertionError,
    NoConvergenceError,
    NotHermitianError,
    NotNormalizedError,
    NotPSDError,
    ScenarioParseError,
    SkewboundsError,
    SpaceTooLargeError,
    TraceNotOneError,
    UnknownExampleError,
)
from .metric import (
    DensityMatrix,
    GammaFactorization,
    MetricParam,
    Observable,
    as_metric_param,
    bloch_state,
    correlation,
    correlation_quadratic,
    gamma_matrix,
    pure_state,
    sampled_coords,
    skew_info_direct,
    skew_info_quadratic,
    validate_density,
    validate_observable,
    variance,
    wyd_kernel,
)
from .scenario_io import dump_scenario, load_scenario, parse_scenario
from .scenarios import (
    Scenario,
    builtin_example,
    evaluate_point,
    fixed_scenario,
    kmix_label,
    random_instance,
    run_sweep,
)
from .search import (
    SearchOutcome,
    SearchStrategy,
    best_ik,
    best_k,
    best_over_family,
    best_spq,
)

__version__ = "0.1.0"

__all__ = [
    "BlochNormExceededError",
    "BoundInputPair",
    "BoundResult",
    "ChainViolationError",
    "CrossCheckError",
    "DensityMatrix",
    "DimensionMismatchError",
    "ExampleAssertionError",
    "GammaFactorization",
    "MetricParam",
    "NoConvergenceError",
    "NotHermitianError",
    "NotNormalizedError",
    "NotPSDError",
    "Observable",
    "SampledMatrix",
    "Scenario",
    "ScenarioParseError",
    "SearchOutcome",
    "SearchStrategy",
    "SkewboundsError",
    "SpaceTooLargeError",
    "TraceNotOneError",
    "UnknownExampleError",
    "as_metric_param",
    "best_ik",
    "best_k",
    "best_over_family",
    "best_spq",
    "bloch_state",
    "bound_b2_cell",
    "bound_b2_max",
    "bound_b2_q",
    "bound_ik",
    "bound_ik_perm",
    "bound_k_prefix",
    "bound_k_subset",
    "bound_lma",
    "bound_spq",
    "bound_spq_perm",
    "builtin_example",
    "chain_pairs",
    "chain_report",
    "convex_combo",
    "correlation",
    "correlation_quadratic",
    "dump_scenario",
    "evaluate_point",
    "f_cs",
    "fixed_scenario",
    "gamma_matrix",
    "kmix_label",
    "load_scenario",
    "parallelogram_residual",
    "parse_scenario",
    "pure_state",
    "random_instance",
    "run_sweep",
    "sampled_coords",
    "sampled_matrix",
    "skew_info_direct",
    "skew_info_quadratic",
    "validate_density",
    "validate_observable",
    "variance",
    "wyd_kernel",
]
