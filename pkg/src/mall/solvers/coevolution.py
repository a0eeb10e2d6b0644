"""
Area-based co-evolution for the mall.

Every area gets its own population scored only on its own locations
(``area_pseudo_fitness``); the engine's population is the main one scored
on the full rent and constraints. Main children are made in three equal
parts:

1. assembled from one member of every area population
2. a main member with one area segment taken from an area population member
3. parameterised uniform crossover inside main

Mating picks the area member of part 2 among several candidates by how
close the combined shop counts come to the ideal counts, and repair fixes
shop types below their minimum in some of those children.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ...core.config.load_config import MallSettings
from ...core.errors import GaConfigurationError
from ...ga.engine import GeneticAlgorithm
from ...ga.population import Individual, Population, apply_weight
from ...ga.replacement import elite_count, replace
from ...ga.selection import rank_select
from ...operators.value_crossover import fixed_point_crossover
from ..evaluate import area_pseudo_fitness
from ..models import Layout, MallInstance
from .direct import MallDirectProblem, MallOptions

logger = logging.getLogger(__name__)

N_STRATEGIES = 3


@dataclass
class AreaPopulation:
    area: int
    population: Population


@dataclass
class MallSubPopLayout:
    areas: list[AreaPopulation]
    main: Population | None = None

    @property
    def total_size(self) -> int:
        return sum(len(ap.population) for ap in self.areas) + (len(self.main) if self.main is not None else 0)


def split_thirds(count: int) -> list[int]:
    """Children per strategy; the first parts take the remainder."""
    base, extra = divmod(count, N_STRATEGIES)
    return [base + (1 if s < extra else 0) for s in range(N_STRATEGIES)]


def splice_area(base: Sequence[int], donor: Sequence[int], area: range) -> Layout:
    """``base`` with the locations of ``area`` taken from ``donor``."""
    n = len(base)
    parts = [(base, range(0, area.start)), (donor, area), (base, range(area.stop, n))]
    return fixed_point_crossover(parts, n)


def ideal_deviation(layout: Sequence[int], instance: MallInstance) -> int:
    totals = np.bincount(np.asarray(layout, dtype=np.int64), minlength=instance.n_types)
    return int(np.abs(totals - instance.ideal).sum())


def pick_mate(first: Sequence[int], candidates: Sequence[Sequence[int]], area: range, instance: MallInstance) -> int:
    """
    Index of the candidate whose ``area`` segment, spliced into ``first``,
    leaves the shop counts closest to their ideal counts (summed absolute
    distance); the first one wins ties.
    """
    if not candidates:
        raise GaConfigurationError("mall.mate_candidates", "no mating candidates")
    n_types = instance.n_types
    first = np.asarray(first, dtype=np.int64)
    outside = np.bincount(first, minlength=n_types) - np.bincount(first[area.start:area.stop], minlength=n_types)
    scores = [
        int(np.abs(outside + np.bincount(np.asarray(c[area.start:area.stop], dtype=np.int64), minlength=n_types)
                   - instance.ideal).sum())
        for c in candidates
    ]
    return int(np.argmin(scores))


def mate_select(
    first: Sequence[int],
    subpop: AreaPopulation,
    instance: MallInstance,
    rng: np.random.Generator,
    n_candidates: int = 10,
) -> Individual:
    """Draw ``n_candidates`` members of ``subpop`` by rank and keep the best mate for ``first``."""
    candidates = rank_select(subpop.population, n_candidates, rng)
    chosen = pick_mate(first, [c.genotype for c in candidates], instance.areas[subpop.area], instance)
    return candidates[chosen]


def shop_count_repair(layout: Sequence[int], instance: MallInstance, rng: np.random.Generator) -> Layout:
    """
    Raise shop types below their minimum one location at a time.

    A location is taken from a donor type holding at least its minimum plus
    one, preferring areas that already hold the short type. Stops when no
    type is short or no donor is left.
    """
    genes = np.asarray(layout, dtype=np.int64).copy()
    area_of = instance.area_of
    while True:
        totals = np.bincount(genes, minlength=instance.n_types)
        short = np.flatnonzero(totals < instance.minimum)
        if short.size == 0:
            break
        donors = np.flatnonzero(totals > instance.minimum)
        if donors.size == 0:
            break
        j = int(short[0])
        from_donor = np.isin(genes, donors)
        areas_with_j = np.unique(area_of[genes == j])
        preferred = np.flatnonzero(from_donor & np.isin(area_of, areas_with_j))
        options = preferred if preferred.size else np.flatnonzero(from_donor)
        genes[int(rng.choice(options))] = j
    return tuple(int(g) for g in genes)


class MallCoevolutionProblem(MallDirectProblem):
    """
    Direct mall binding whose ``breed`` also advances one population per
    area. ``mating`` chooses the second parent of the splice children from
    ``mate_candidates`` area members; ``repair`` then fixes shop counts in
    ``repair_probability`` of them.
    """

    def __init__(
        self,
        instance: MallInstance,
        options: MallOptions | None = None,
        area_pop_size: int = 25,
        mating: bool = False,
        repair: bool = False,
        mate_candidates: int = 10,
        repair_probability: float = 0.5,
    ):
        super().__init__(instance, options)
        if area_pop_size < 2:
            raise GaConfigurationError("mall.area_pop_size", f"must be at least 2, got {area_pop_size}")
        if mate_candidates < 1:
            raise GaConfigurationError("mall.mate_candidates", f"must be at least 1, got {mate_candidates}")
        if not 0.0 <= repair_probability <= 1.0:
            raise GaConfigurationError("mall.repair_probability", f"must be in [0, 1], got {repair_probability}")
        self.area_pop_size = area_pop_size
        self.mating = mating or repair
        self.repair = repair
        self.mate_candidates = mate_candidates
        self.repair_probability = repair_probability
        self.layout: MallSubPopLayout | None = None

    @classmethod
    def from_settings(cls, instance: MallInstance, settings: MallSettings, algorithm: str) -> "MallCoevolutionProblem":
        return cls(
            instance,
            MallOptions.from_settings(settings),
            area_pop_size=settings.area_pop_size,
            mating=algorithm in ("coevo-mate", "coevo-repair"),
            repair=algorithm == "coevo-repair",
            mate_candidates=settings.mate_candidates,
            repair_probability=settings.repair_probability,
        )

    def score(self, individual: Individual, ap: AreaPopulation) -> Individual:
        individual.objective = area_pseudo_fitness(individual.genotype, ap.area, self.instance) / self.options.rent_scale
        individual.violation = 0.0
        individual.feasible = True
        individual.bonus = 0.0
        individual.extra = 0.0
        individual.evaluated = True
        apply_weight(individual, 0.0, maximize=True)
        return individual

    def init_layout(self, ga: GeneticAlgorithm) -> MallSubPopLayout:
        areas = []
        for k in range(self.instance.n_areas):
            ap = AreaPopulation(
                area=k,
                population=Population(members=[], capacity=self.area_pop_size, maximize=True, name=f"area-{k + 1}"),
            )
            ap.population.members = [
                self.score(Individual(genotype=self.random_layout(ga.rng)), ap) for _ in range(self.area_pop_size)
            ]
            areas.append(ap)
        logger.debug(f"initialised {len(areas)} area populations of {self.area_pop_size}")
        return MallSubPopLayout(areas=areas)

    def evolve_areas(self, layout: MallSubPopLayout, ga: GeneticAlgorithm) -> None:
        cfg = ga.config
        for ap in layout.areas:
            count = ap.population.capacity - elite_count(ap.population.capacity, cfg.elite_fraction)
            children = [self.score(Individual(genotype=g), ap) for g in self.internal_children(ap.population, count, ga)]
            ap.population = replace(ap.population, children, cfg.elite_fraction, cfg.dedupe)

    def assembled_child(self, layout: MallSubPopLayout, ga: GeneticAlgorithm) -> Layout:
        parts = []
        for ap in layout.areas:
            donor = rank_select(ap.population, 1, ga.rng)[0]
            parts.append((donor.genotype, self.instance.areas[ap.area]))
        return fixed_point_crossover(parts, self.instance.n_locations)

    def spliced_child(self, layout: MallSubPopLayout, ga: GeneticAlgorithm) -> Layout:
        first = rank_select(layout.main, 1, ga.rng)[0]
        ap = layout.areas[int(ga.rng.integers(len(layout.areas)))]
        if self.mating:
            mate = mate_select(first.genotype, ap, self.instance, ga.rng, self.mate_candidates)
            ga.count("matings")
        else:
            mate = rank_select(ap.population, 1, ga.rng)[0]
        child = splice_area(first.genotype, mate.genotype, self.instance.areas[ap.area])
        if self.repair and ga.rng.random() < self.repair_probability:
            repaired = shop_count_repair(child, self.instance, ga.rng)
            if repaired != child:
                ga.count("repairs")
            child = repaired
        return child

    def main_children(self, layout: MallSubPopLayout, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        assembled, spliced, internal = split_thirds(count)
        genotypes = [self.assembled_child(layout, ga) for _ in range(assembled)]
        genotypes += [self.spliced_child(layout, ga) for _ in range(spliced)]
        genotypes = [self.mutate(g, ga) for g in genotypes]
        genotypes += self.internal_children(layout.main, internal, ga)
        return [Individual(genotype=g) for g in genotypes]

    def breed(self, population: Population, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        if self.layout is None:
            self.layout = self.init_layout(ga)
        self.layout.main = population
        self.evolve_areas(self.layout, ga)
        return self.main_children(self.layout, count, ga)


def mall_coevolve_generation(
    layout: MallSubPopLayout,
    problem: MallCoevolutionProblem,
    ga: GeneticAlgorithm,
) -> MallSubPopLayout:
    """Advance the area populations and main by one generation."""
    if layout.main is None:
        raise GaConfigurationError("layout.main", "main population missing")
    cfg = ga.config
    main = layout.main
    problem.evolve_areas(layout, ga)
    count = main.capacity - elite_count(main.capacity, cfg.elite_fraction)
    children = [ga.evaluate(child) for child in problem.main_children(layout, count, ga)]
    layout.main = replace(main, children, cfg.elite_fraction, cfg.dedupe)
    return layout
