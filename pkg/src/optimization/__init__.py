"""Search for multi-sector plates of maximal Shannon dimensionality."""

from .base import BaseOptimizer, OptimizationReport
from .objective import (
    MIN_GAP,
    canonical_boundaries,
    candidate_plate,
    evaluate_candidate,
    nest_candidate,
)
from .pattern_search import pattern_refine
from .random_search import (
    MonteCarloOptimizer,
    RefinedOptimizer,
    build_optimizer,
    dimension_vs_sectors,
    optimize_plate,
)

__all__ = [
    "MIN_GAP",
    "BaseOptimizer",
    "MonteCarloOptimizer",
    "OptimizationReport",
    "RefinedOptimizer",
    "build_optimizer",
    "canonical_boundaries",
    "candidate_plate",
    "dimension_vs_sectors",
    "evaluate_candidate",
    "nest_candidate",
    "optimize_plate",
    "pattern_refine",
]
