"""
Indirect nurse encoding: the genotype is a permutation of nurses and a
greedy decoder builds the roster.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ...core.config.load_config import NurseSettings
from ...core.errors import GaConfigurationError
from ...ga.engine import GeneticAlgorithm
from ...ga.population import Individual, Population
from ...ga.selection import rank_of, rank_select, rank_table
from ...operators.adaptive import AdaptiveSpec, CrossoverTag, Inheritance, inherit_adaptive, init_adaptive, mutate_adaptive
from ...operators.mutation import mutate_permutation
from ...operators.permutation_crossover import crossover_permutations
from ..evaluate import evaluate, extended_penalty
from ..models import N_GRADES, NurseInstance, Roster
from .bounds import boundary_point
from .decoders import DECODERS, DecoderWeights, DecodeStats
from .search_order import OrderKind, make_search_orders

logger = logging.getLogger(__name__)

ADAPTIVE_WEIGHT_RANGE = (0.0, 100.0)
ADAPTIVE_PREFERENCE = 1.0


@dataclass(frozen=True)
class IndirectOptions:
    decoder: str = "combined"
    order: OrderKind = OrderKind.CHEAPEST
    bound: bool = True
    boundary_operators: bool = False
    weights: DecoderWeights = DecoderWeights()
    adaptive: bool = False
    adaptive_crossover: bool = False
    inheritance: Inheritance = Inheritance.RANK_WEIGHTED_AVERAGE
    grade_sorted_seed: bool = False
    extensions: bool = False
    w_head: float = 5.0
    w_team: float = 5.0

    def __post_init__(self):
        if self.decoder not in DECODERS:
            raise GaConfigurationError("nurse.decoder", f"expected one of {tuple(DECODERS)}, got {self.decoder!r}")

    @classmethod
    def from_settings(cls, settings: NurseSettings) -> "IndirectOptions":
        return cls(
            decoder=settings.decoder,
            order=OrderKind(settings.order),
            bound=settings.bound,
            boundary_operators=settings.boundary_operators,
            weights=DecoderWeights(cover=tuple(settings.cover_weights), preference=settings.preference_weight),
            adaptive=settings.adaptive,
            adaptive_crossover=settings.adaptive_crossover,
            inheritance=Inheritance(settings.inheritance),
            grade_sorted_seed=settings.grade_sorted_seed,
            extensions=settings.extensions,
            w_head=settings.w_head,
            w_team=settings.w_team,
        )

    def adaptive_spec(self) -> AdaptiveSpec | None:
        if not self.adaptive and not self.adaptive_crossover:
            return None
        return AdaptiveSpec(
            n_weights=N_GRADES,
            weight_range=ADAPTIVE_WEIGHT_RANGE,
            adapt_weights=self.adaptive,
            fixed_weights=None if self.adaptive else tuple(self.weights.cover),
            adapt_crossover=self.adaptive_crossover,
            inheritance=self.inheritance,
        )


class NurseIndirectProblem:
    """
    Permutation GA binding. Decoder weights come from the options, or from
    each member's adaptive genes (with the preference weight fixed at 1).
    The simple bound uses the best feasible objective of the run so far.
    """
    maximize = False

    def __init__(self, instance: NurseInstance, options: IndirectOptions | None = None):
        self.instance = instance
        self.options = options or IndirectOptions()
        self.decode = DECODERS[self.options.decoder]
        self.spec = self.options.adaptive_spec()
        self.orders: list[tuple[int, ...]] | None = None
        self.stats = DecodeStats()

    def _ensure_orders(self, rng: np.random.Generator) -> list[tuple[int, ...]]:
        if self.orders is None:
            self.orders = make_search_orders(self.options.order, self.instance, rng)
        return self.orders

    def grade_sorted(self, rng: np.random.Generator) -> tuple[int, ...]:
        """Grade-1 nurses first, then grade 2, then grade 3, shuffled within each grade."""
        perm = []
        for grade in range(1, N_GRADES + 1):
            segment = list(self.instance.grade_segment(grade))
            perm += [segment[k] for k in rng.permutation(len(segment))]
        return tuple(perm)

    def sample(self, rng: np.random.Generator, ga: GeneticAlgorithm) -> Individual:
        self._ensure_orders(rng)
        if self.options.grade_sorted_seed:
            perm = self.grade_sorted(rng)
        else:
            perm = tuple(int(i) for i in rng.permutation(len(self.instance)))
        aux = init_adaptive(self.spec, rng) if self.spec is not None else None
        return Individual(genotype=perm, aux=aux)

    def weights_for(self, individual: Individual) -> DecoderWeights:
        if self.options.adaptive and individual.aux is not None:
            return DecoderWeights(cover=tuple(individual.aux.decoder_weights), preference=ADAPTIVE_PREFERENCE)
        return self.options.weights

    def decode_member(self, individual: Individual, best_cost: float | None, rng: np.random.Generator) -> Roster:
        orders = self._ensure_orders(rng)
        if self.options.decoder == "highest":
            return self.decode(individual.genotype, self.instance, orders, best_cost, self.stats)
        return self.decode(individual.genotype, self.instance, self.weights_for(individual), orders, best_cost, self.stats)

    def evaluate(self, individual: Individual, ga: GeneticAlgorithm) -> None:
        best_cost = ga.best_feasible_objective if self.options.bound else None
        roster = self.decode_member(individual, best_cost, ga.rng)
        result = evaluate(roster, self.instance, ga.weight, quadratic=ga.config.penalty.quadratic)
        individual.phenotype = roster
        individual.objective = result.objective
        individual.violation = result.violation
        individual.feasible = result.feasible
        individual.bonus = 0.0
        individual.extra = 0.0
        if self.options.extensions and self.instance.has_extensions:
            individual.extra = extended_penalty(roster, self.instance, self.options.w_head, self.options.w_team)

    def cumulative_cost(self, individual: Individual) -> np.ndarray:
        """Running cost total along the permutation of a decoded member."""
        perm = np.asarray(individual.genotype, dtype=np.int64)
        roster = np.asarray(individual.phenotype, dtype=np.int64)
        return np.cumsum(self.instance.cost_matrix[perm, roster[perm]])

    def breed(self, population: Population, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        cfg = ga.config
        children: list[Individual] = []
        ranks = rank_table(population)
        while len(children) < count:
            p1, p2 = rank_select(population, 2, ga.rng)
            r1, r2 = rank_of(population, p1, ranks), rank_of(population, p2, ranks)
            leader = p2 if r2 > r1 else p1
            tag = leader.aux.crossover_tag if self.options.adaptive_crossover and leader.aux is not None else None
            operator = tag.operator if isinstance(tag, CrossoverTag) else cfg.crossover
            p = tag.p if isinstance(tag, CrossoverTag) else cfg.crossover_p

            boundary = None
            if self.options.boundary_operators and ga.best_feasible_objective is not None:
                boundary = boundary_point(self.cumulative_cost(p1), ga.best_feasible_objective)
                ga.count("boundary_applied")

            offspring = crossover_permutations(operator, p1.genotype, p2.genotype, ga.rng, p=p, boundary=boundary)
            aux = None
            if self.spec is not None:
                ranked = [(p1.aux, r1), (p2.aux, r2)]
            for genotype in offspring:
                if len(children) == count:
                    break
                if self.spec is not None:
                    aux = mutate_adaptive(
                        inherit_adaptive(ranked, self.spec.inheritance, ga.rng, self.spec),
                        self.spec, cfg.per_gene_mutation_rate, ga.rng,
                    )
                child = mutate_permutation(cfg.mutation, genotype, cfg.per_gene_mutation_rate, ga.rng, boundary)
                children.append(Individual(genotype=child, aux=aux))
        return children

    def improve(self, population: Population, ga: GeneticAlgorithm) -> None:
        ga.diagnostics["bound_fallbacks"] = self.stats.bound_fallbacks
        ga.diagnostics["highest_fallbacks"] = self.stats.highest_fallbacks
