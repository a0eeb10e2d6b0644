"""
Direct mall encoding: gene ``l`` is the shop type in location ``l``.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ...core.config.load_config import MallSettings
from ...ga.engine import GeneticAlgorithm
from ...ga.population import Individual, Population
from ...ga.selection import rank_select
from ...operators.mutation import single_gene_mutation
from ...operators.value_crossover import kpoint_crossover, multi_parent_children
from ..evaluate import evaluate_layout
from ..models import Layout, MallInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MallOptions:
    rent_scale: float = 1000.0 # 适应度中的租金单位 (千)

    @classmethod
    def from_settings(cls, settings: MallSettings) -> "MallOptions":
        return cls(rent_scale=settings.rent_scale)


class MallDirectProblem:
    """
    Maximises rent in thousands minus the weighted violation. Children come
    from parameterised uniform crossover or k-point crossover, then
    single-gene mutation over all shop types.
    """
    maximize = True

    def __init__(self, instance: MallInstance, options: MallOptions | None = None):
        self.instance = instance
        self.options = options or MallOptions()
        every_type = tuple(range(instance.n_types))
        self.domains = (every_type,) * instance.n_locations

    def random_layout(self, rng: np.random.Generator) -> Layout:
        return tuple(int(j) for j in rng.integers(self.instance.n_types, size=self.instance.n_locations))

    def sample(self, rng: np.random.Generator, ga: GeneticAlgorithm) -> Individual:
        return Individual(genotype=self.random_layout(rng))

    def evaluate(self, individual: Individual, ga: GeneticAlgorithm) -> None:
        result = evaluate_layout(
            individual.genotype, self.instance, ga.weight,
            rent_scale=self.options.rent_scale, quadratic=ga.config.penalty.quadratic,
        )
        individual.objective = result.rent / self.options.rent_scale
        individual.violation = result.violation
        individual.feasible = result.feasible
        individual.bonus = 0.0
        individual.extra = 0.0

    def mutate(self, genotype: Layout, ga: GeneticAlgorithm, rate: float | None = None) -> Layout:
        rate = ga.config.per_gene_mutation_rate if rate is None else rate
        return single_gene_mutation(genotype, rate, self.domains, ga.rng)

    def internal_children(self, population: Population, count: int, ga: GeneticAlgorithm) -> list[Layout]:
        cfg = ga.config
        genotypes: list[Layout] = []
        while len(genotypes) < count:
            if cfg.crossover == "kpoint":
                p1, p2 = rank_select(population, 2, ga.rng)
                offspring = list(kpoint_crossover(p1.genotype, p2.genotype, cfg.crossover_k, ga.rng))
            else:
                parents = rank_select(population, cfg.parents_per_crossover, ga.rng)
                offspring = multi_parent_children([p.genotype for p in parents], cfg.crossover_p, ga.rng)
            for genotype in offspring:
                if len(genotypes) == count:
                    break
                genotypes.append(self.mutate(genotype, ga))
        return genotypes

    def breed(self, population: Population, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        return [Individual(genotype=g) for g in self.internal_children(population, count, ga)]

    def improve(self, population: Population, ga: GeneticAlgorithm) -> None:
        return None
