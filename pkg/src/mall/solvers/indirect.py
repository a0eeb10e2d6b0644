"""
Indirect mall encoding: the genotype is a permutation of locations and
``decode_mall`` builds the layout.

Decoder weights come from a fixed preset, or ride along as adaptive genes
(``weights: auto``), optionally with a crossover tag and a per-member
mutation rate.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ...core.config.load_config import MallSettings
from ...core.errors import GaConfigurationError
from ...ga.engine import GeneticAlgorithm
from ...ga.population import Individual, Population
from ...ga.selection import rank_of, rank_select, rank_table
from ...operators.adaptive import AdaptiveSpec, CrossoverTag, Inheritance, inherit_adaptive, init_adaptive, mutate_adaptive
from ...operators.mutation import mutate_permutation
from ...operators.permutation_crossover import crossover_permutations
from ..evaluate import evaluate_layout
from ..models import Layout, MallInstance
from .decoder import N_DECODER_WEIGHTS, PRESETS, DecodeDiagnostics, MallDecoderWeights, decode_mall

logger = logging.getLogger(__name__)


class AdaptiveMode(str, Enum):
    FIXED = "fixed"
    WEIGHTS = "weights"
    WEIGHTS_CROSSOVER = "weights+crossover"
    WEIGHTS_CROSSOVER_MUTATION = "weights+crossover+mutation"


def configure_adaptive(
    mode: AdaptiveMode | str,
    weight_range: float = 10000.0,
    inheritance: Inheritance | str = Inheritance.RANK_WEIGHTED_AVERAGE,
) -> AdaptiveSpec | None:
    """
    Adaptive genes for a mode: six decoder weights drawn from
    ``[0, weight_range]``, then a crossover tag over C1/PMX/PUX66, then a
    mutation rate in [0, 0.05]. ``FIXED`` carries none.
    """
    mode = AdaptiveMode(mode)
    if mode is AdaptiveMode.FIXED:
        return None
    if weight_range <= 0:
        raise GaConfigurationError("mall.weight_range", f"must be positive, got {weight_range}")
    return AdaptiveSpec(
        n_weights=N_DECODER_WEIGHTS,
        weight_range=(0.0, float(weight_range)),
        adapt_weights=True,
        adapt_crossover=mode in (AdaptiveMode.WEIGHTS_CROSSOVER, AdaptiveMode.WEIGHTS_CROSSOVER_MUTATION),
        adapt_mutation=mode is AdaptiveMode.WEIGHTS_CROSSOVER_MUTATION,
        inheritance=Inheritance(inheritance),
    )


def mode_from_settings(settings: MallSettings) -> AdaptiveMode:
    if settings.weights != "auto":
        if settings.adaptive_crossover or settings.adaptive_mutation:
            raise GaConfigurationError("mall.weights", "adaptive operators need weights: auto")
        return AdaptiveMode.FIXED
    if settings.adaptive_mutation:
        if not settings.adaptive_crossover:
            raise GaConfigurationError("mall.adaptive_mutation", "adaptive mutation needs adaptive_crossover")
        return AdaptiveMode.WEIGHTS_CROSSOVER_MUTATION
    if settings.adaptive_crossover:
        return AdaptiveMode.WEIGHTS_CROSSOVER
    return AdaptiveMode.WEIGHTS


@dataclass(frozen=True)
class MallIndirectOptions:
    weights: MallDecoderWeights = PRESETS["medium"]
    adaptive: AdaptiveSpec | None = None
    rent_scale: float = 1000.0

    @classmethod
    def from_settings(cls, settings: MallSettings) -> "MallIndirectOptions":
        mode = mode_from_settings(settings)
        return cls(
            weights=PRESETS.get(settings.weights, PRESETS["medium"]),
            adaptive=configure_adaptive(mode, settings.weight_range, settings.inheritance),
            rent_scale=settings.rent_scale,
        )


class MallIndirectProblem:
    maximize = True

    def __init__(self, instance: MallInstance, options: MallIndirectOptions | None = None):
        self.instance = instance
        self.options = options or MallIndirectOptions()
        self.spec = self.options.adaptive
        self.diagnostics = DecodeDiagnostics()

    def sample(self, rng: np.random.Generator, ga: GeneticAlgorithm) -> Individual:
        perm = tuple(int(i) for i in rng.permutation(self.instance.n_locations))
        aux = init_adaptive(self.spec, rng) if self.spec is not None else None
        return Individual(genotype=perm, aux=aux)

    def weights_for(self, individual: Individual) -> MallDecoderWeights:
        if self.spec is not None and individual.aux is not None:
            return MallDecoderWeights.from_sequence(individual.aux.decoder_weights)
        return self.options.weights

    def decode(self, individual: Individual) -> Layout:
        layout, diagnostics = decode_mall(individual.genotype, self.instance, self.weights_for(individual))
        self.diagnostics.merge(diagnostics)
        return layout

    def evaluate(self, individual: Individual, ga: GeneticAlgorithm) -> None:
        layout = self.decode(individual)
        result = evaluate_layout(
            layout, self.instance, ga.weight,
            rent_scale=self.options.rent_scale, quadratic=ga.config.penalty.quadratic,
        )
        individual.phenotype = layout
        individual.objective = result.rent / self.options.rent_scale
        individual.violation = result.violation
        individual.feasible = result.feasible
        individual.bonus = 0.0
        individual.extra = 0.0

    def breed(self, population: Population, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        cfg = ga.config
        spec = self.spec
        children: list[Individual] = []
        ranks = rank_table(population)
        while len(children) < count:
            p1, p2 = rank_select(population, 2, ga.rng)
            r1, r2 = rank_of(population, p1, ranks), rank_of(population, p2, ranks)
            # the better-ranked parent picks the operator, as it passes on its tag
            tag = None
            if spec is not None and spec.adapt_crossover:
                tag = (p2 if r2 > r1 else p1).aux.crossover_tag
            operator = tag.operator if isinstance(tag, CrossoverTag) else cfg.crossover
            p = tag.p if isinstance(tag, CrossoverTag) else cfg.crossover_p
            offspring = crossover_permutations(operator, p1.genotype, p2.genotype, ga.rng, p=p)
            if spec is not None:
                ranked = [(p1.aux, r1), (p2.aux, r2)]
            for genotype in offspring:
                if len(children) == count:
                    break
                aux = None
                rate = cfg.per_gene_mutation_rate
                if spec is not None:
                    aux = mutate_adaptive(
                        inherit_adaptive(ranked, spec.inheritance, ga.rng, spec),
                        spec, cfg.per_gene_mutation_rate, ga.rng,
                    )
                    if aux.mutation_rate is not None:
                        rate = aux.mutation_rate
                child = mutate_permutation(cfg.mutation, genotype, rate, ga.rng)
                children.append(Individual(genotype=child, aux=aux))
        return children

    def improve(self, population: Population, ga: GeneticAlgorithm) -> None:
        ga.diagnostics["at_max_fallbacks"] = self.diagnostics.at_max_fallbacks
