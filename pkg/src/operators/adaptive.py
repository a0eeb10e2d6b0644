"""
Adaptive genes carried next to a permutation: decoder weights, a crossover
tag and a per-individual mutation rate.

Weights are inherited by one of three strategies; the crossover tag always
comes from the higher-ranked parent and the mutation rate is the
rank-weighted average of the parents' rates.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from ..core.errors import OperatorError


class CrossoverTag(str, Enum):
    C1 = "c1"
    PMX = "pmx"
    PUX66 = "pux66"

    @property
    def operator(self) -> str:
        return "pux" if self is CrossoverTag.PUX66 else self.value

    @property
    def p(self) -> float:
        return 0.66


class Inheritance(str, Enum):
    TAKE_RANDOM_PARENT = "take_random_parent"
    RANK_WEIGHTED_AVERAGE = "rank_weighted_average"
    UNIFORM_IN_RANGE = "uniform_in_range"


@dataclass(frozen=True)
class AdaptiveGenes:
    decoder_weights: tuple[float, ...]
    crossover_tag: CrossoverTag | None = None
    mutation_rate: float | None = None


@dataclass(frozen=True)
class AdaptiveSpec:
    """Which genes adapt, and their initialisation ranges."""
    n_weights: int
    weight_range: tuple[float, float] = (0.0, 10000.0)
    adapt_weights: bool = True
    fixed_weights: tuple[float, ...] | None = None
    adapt_crossover: bool = False
    fixed_tag: CrossoverTag | None = None
    tags: tuple[CrossoverTag, ...] = (CrossoverTag.C1, CrossoverTag.PMX, CrossoverTag.PUX66)
    adapt_mutation: bool = False
    mutation_range: tuple[float, float] = (0.0, 0.05)
    inheritance: Inheritance = Inheritance.RANK_WEIGHTED_AVERAGE

    def __post_init__(self):
        if not self.adapt_weights and (self.fixed_weights is None or len(self.fixed_weights) != self.n_weights):
            raise OperatorError("AdaptiveSpec", "fixed_weights must be given when weights do not adapt")
        low, high = self.weight_range
        if low < 0 or high < low:
            raise OperatorError("AdaptiveSpec", f"invalid weight range {self.weight_range}")


def _draw_weights(spec: AdaptiveSpec, rng: np.random.Generator) -> tuple[float, ...]:
    low, high = spec.weight_range
    return tuple(float(x) for x in rng.uniform(low, high, size=spec.n_weights))


def init_adaptive(spec: AdaptiveSpec, rng: np.random.Generator) -> AdaptiveGenes:
    weights = _draw_weights(spec, rng) if spec.adapt_weights else tuple(spec.fixed_weights)
    tag = spec.tags[int(rng.integers(len(spec.tags)))] if spec.adapt_crossover else spec.fixed_tag
    rate = float(rng.uniform(*spec.mutation_range)) if spec.adapt_mutation else None
    return AdaptiveGenes(decoder_weights=weights, crossover_tag=tag, mutation_rate=rate)


def inherit_adaptive(
    parents: Sequence[tuple[AdaptiveGenes | None, float]],
    strategy: Inheritance | str,
    rng: np.random.Generator,
    spec: AdaptiveSpec | None = None,
) -> AdaptiveGenes:
    """
    Child adaptive genes from ranked parents.

    Args:
        parents: (genes, rank) pairs; a higher rank is a better parent
        strategy: how decoder weights are combined
        rng: run generator
        spec: when given and weights do not adapt, the fixed weights are kept

    Raises:
        OperatorError: a parent carries no adaptive genes
    """
    if not parents:
        raise OperatorError("inherit_adaptive", "no parents given")
    if any(genes is None for genes, _ in parents):
        raise OperatorError("inherit_adaptive", "missing aux genes on a parent")
    strategy = Inheritance(strategy)
    ranks = np.array([float(rank) for _, rank in parents])
    if np.any(ranks <= 0):
        raise OperatorError("inherit_adaptive", "ranks must be positive")
    genes = [g for g, _ in parents]
    matrix = np.array([g.decoder_weights for g in genes], dtype=float)
    top = int(np.argmax(ranks))

    if spec is not None and not spec.adapt_weights:
        weights = tuple(spec.fixed_weights)
    elif strategy is Inheritance.TAKE_RANDOM_PARENT:
        weights = tuple(float(x) for x in matrix[int(rng.integers(len(genes)))])
    elif strategy is Inheritance.RANK_WEIGHTED_AVERAGE:
        weights = tuple(float(x) for x in (ranks @ matrix) / ranks.sum())
    else:
        low, high = matrix.min(axis=0), matrix.max(axis=0)
        weights = tuple(float(x) for x in rng.uniform(low, high))

    rates = [g.mutation_rate for g in genes]
    if all(r is not None for r in rates):
        rate = float(np.dot(ranks, rates) / ranks.sum())
    else:
        rate = None

    return AdaptiveGenes(decoder_weights=weights, crossover_tag=genes[top].crossover_tag, mutation_rate=rate)


def mutate_adaptive(
    genes: AdaptiveGenes,
    spec: AdaptiveSpec,
    rate: float,
    rng: np.random.Generator,
) -> AdaptiveGenes:
    """
    Mutation re-initialises adaptive genes uniformly over their full ranges.

    Each adaptive gene is treated like one more string position and is
    re-drawn with probability ``rate``.
    """
    weights = list(genes.decoder_weights)
    if spec.adapt_weights:
        low, high = spec.weight_range
        for i in np.flatnonzero(rng.random(len(weights)) < rate):
            weights[int(i)] = float(rng.uniform(low, high))
    tag = genes.crossover_tag
    if spec.adapt_crossover and rng.random() < rate:
        tag = spec.tags[int(rng.integers(len(spec.tags)))]
    mutation_rate = genes.mutation_rate
    if spec.adapt_mutation and rng.random() < rate:
        mutation_rate = float(rng.uniform(*spec.mutation_range))
    return AdaptiveGenes(decoder_weights=tuple(weights), crossover_tag=tag, mutation_rate=mutation_rate)
