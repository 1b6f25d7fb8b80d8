"""Sensitivity-sampling coresets for fitting a single-frequency squared sine to integer data."""

__version__ = "0.1.0"

from .core import (
    IntegerPointSet,
    abs_sin_reduced,
    cost,
    reduce_product,
    sin2_of_integer,
    sin2_term,
)
from .coreset import (
    WeightedCoreset,
    coreset_cost,
    identity_coreset,
    sample_coreset,
    theoretical_size,
    uniform_coreset,
    vc_bound,
)
from .discretize import DiscretizationResult, discretize_dataset, project, roots_spacing
from .errors import (
    DegenerateInput,
    EmptyCoreset,
    EmptyFeasibleSet,
    EmptyRestrictedSet,
    InvalidSensitivities,
    SineCoresetError,
)
from .evalharness import TrialReport, cost_profile, max_query_error, optimal_solution_error, run_trials
from .ingest import IngestConfig, load_series, quantize, synthetic_points
from .sensitivity import (
    SensitivityMap,
    g_diagnostic,
    restricted_queries,
    sensitivities_exact,
    sensitivities_parallel,
    total_sensitivity,
)
from .solver import FitResult, Regularizer, solve_exact, solve_on_coreset
from .streaming import StreamState, memory_bound
