"""K-beam subgradient descent for continuous minimax problems."""

from .hull import HullPoint, contains_origin, min_norm_point, sample_convex_combination
from .optimizer import (
    DescentResult,
    RunConfig,
    RunState,
    Schedule,
    descent_direction,
    epsilon_stationarity_check,
    max_step,
    run,
)
from .problem import BoxDomain, MinimaxProblem, project, sample_uniform, validate_gradients
from .surfaces import BenchmarkSurface, SolutionSet, distance_to_solution, get_surface

__version__ = "0.1.0"

__all__ = [
    "BenchmarkSurface",
    "BoxDomain",
    "DescentResult",
    "HullPoint",
    "MinimaxProblem",
    "RunConfig",
    "RunState",
    "Schedule",
    "SolutionSet",
    "contains_origin",
    "descent_direction",
    "distance_to_solution",
    "epsilon_stationarity_check",
    "get_surface",
    "max_step",
    "min_norm_point",
    "project",
    "run",
    "sample_convex_combination",
    "sample_uniform",
    "validate_gradients",
]
