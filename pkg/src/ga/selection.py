import numpy as np

from ..core.errors import EmptyPopulationError, GaConfigurationError
from .population import Individual, Population


def rank_probabilities(population: Population) -> np.ndarray:
    """
    Selection probability per member of ``population.ranked()``.

    The best of N members has rank N and the worst rank 1, so the best is
    drawn with probability N / (N(N+1)/2).
    """
    n = len(population)
    if n == 0:
        raise EmptyPopulationError(population.name)
    ranks = np.arange(n, 0, -1, dtype=float)
    return ranks / ranks.sum()


def rank_select(population: Population, count: int, rng: np.random.Generator) -> list[Individual]:
    """
    Draw ``count`` parents with replacement, proportional to rank.

    Raises:
        EmptyPopulationError: population has no members
        GaConfigurationError: count < 1
    """
    if len(population) == 0:
        raise EmptyPopulationError(population.name)
    if count < 1:
        raise GaConfigurationError("count", f"must be at least 1, got {count}")
    ranked = population.ranked()
    picks = rng.choice(len(ranked), size=count, p=rank_probabilities(population))
    return [ranked[int(i)] for i in picks]


def rank_table(population: Population) -> dict[int, int]:
    """``id(member) -> rank`` for one breeding pass; N for the best member, 1 for the worst."""
    ranked = population.ranked()
    return {id(member): len(ranked) - position for position, member in enumerate(ranked)}


def rank_of(population: Population, individual: Individual, table: dict[int, int] | None = None) -> int:
    """Rank used for inheritance weighting. Pass ``table`` to avoid re-sorting per call."""
    table = table if table is not None else rank_table(population)
    try:
        return table[id(individual)]
    except KeyError:
        raise ValueError("individual is not a member of the population") from None
