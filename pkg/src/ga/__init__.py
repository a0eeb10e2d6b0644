"""
Generic generational GA engine: population bookkeeping, rank selection,
elitist replacement with duplicate elimination and stagnation stopping.
"""

from .population import Individual, Population, apply_weight, rank_key
from .selection import rank_probabilities, rank_select
from .replacement import elite_count, replace
from .engine import GaConfig, GeneticAlgorithm, ProblemBinding, run, should_stop
from .tracking import BestTracker, GenerationStats, RunResult, SolutionRecord

__all__ = [
    "Individual",
    "Population",
    "apply_weight",
    "rank_key",
    "rank_probabilities",
    "rank_select",
    "elite_count",
    "replace",
    "GaConfig",
    "GeneticAlgorithm",
    "ProblemBinding",
    "run",
    "should_stop",
    "BestTracker",
    "GenerationStats",
    "RunResult",
    "SolutionRecord",
]
