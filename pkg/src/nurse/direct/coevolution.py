"""
Co-evolution of grade-restricted sub-populations.

Seven sub-populations each judge a full roster only on the nurses of their
own grades, against the pseudo demand those exact grades must meet:

    {1} {2} {3} {1,2} {1,3} {2,3} {1,2,3}

The engine's population is the eighth, main population scored on the whole
roster. Two-grade and three-grade populations, and main, breed half their
children internally and half by stitching grade blocks from lower
populations with a fixed-point crossover. Migration exchanges members
between populations so sizes never change.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from ...core.config.load_config import NurseSettings
from ...core.errors import GaConfigurationError
from ...ga.engine import GeneticAlgorithm
from ...ga.population import Individual, Population, apply_weight, rank_key
from ...ga.replacement import elite_count, replace
from ...ga.selection import rank_select
from ...operators.value_crossover import fixed_point_crossover, multi_parent_children
from ...penalty.strategies import PenaltyState
from ..evaluate import sub_parts
from ..models import N_GRADES, NurseInstance
from .solver import DirectOptions, NurseDirectProblem

logger = logging.getLogger(__name__)

ALL_GRADES = frozenset(range(1, N_GRADES + 1))
GRADE_SETS: tuple[frozenset[int], ...] = (
    frozenset({1}), frozenset({2}), frozenset({3}),
    frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3}),
    ALL_GRADES,
)

# (supplying population, grades taken from it)
Assembly = tuple[tuple[frozenset[int], frozenset[int]], ...]


def set_partitions(items: frozenset[int]) -> list[list[frozenset[int]]]:
    """All partitions of a small set into non-empty blocks."""
    ordered = sorted(items)
    if not ordered:
        return [[]]
    first, rest = ordered[0], frozenset(ordered[1:])
    partitions = []
    for smaller in set_partitions(rest):
        partitions.append([frozenset({first})] + smaller)
        for k, block in enumerate(smaller):
            partitions.append(smaller[:k] + [block | {first}] + smaller[k + 1:])
    return partitions


def sub_assemblies(target: frozenset[int]) -> list[Assembly]:
    """Ways to build a ``target`` roster from strictly smaller grade populations."""
    return [
        tuple((block, block) for block in partition)
        for partition in set_partitions(target)
        if len(partition) > 1
    ]


def main_assemblies() -> list[Assembly]:
    """
    1+2+3, {1,2}+3, {1,3}+2, {2,3}+1, {1,2,3} alone, and {1,2,3} with any
    other population overriding that population's grades.
    """
    exact = [tuple((block, block) for block in partition) for partition in set_partitions(ALL_GRADES)]
    overrides = [
        ((grades, grades), (ALL_GRADES, ALL_GRADES - grades))
        for grades in GRADE_SETS if grades != ALL_GRADES
    ]
    return exact + overrides


class MigrationMode(str, Enum):
    RANDOM = "random"
    BEST_K = "best_k"
    NONE = "none"


@dataclass(frozen=True)
class MigrationPolicy:
    mode: MigrationMode = MigrationMode.RANDOM
    rate: float = 0.05 # RANDOM: 每个成员迁移的概率
    every: int = 5 # BEST_K: 每隔多少代
    k: int = 5

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise GaConfigurationError("nurse.migration_rate", f"must be in [0, 1], got {self.rate}")
        if self.every < 1 or self.k < 0:
            raise GaConfigurationError("nurse.migration_every", "interval must be >= 1 and k >= 0")


@dataclass
class GradePopulation:
    grades: frozenset[int]
    population: Population
    penalty: PenaltyState
    best_feasible: float | None = None


@dataclass
class SubPopLayout:
    subpops: list[GradePopulation]
    main: Population | None = None
    assemblies: dict[frozenset[int], list[Assembly]] = field(default_factory=dict)

    def pop(self, grades: frozenset[int]) -> GradePopulation:
        for gp in self.subpops:
            if gp.grades == grades:
                return gp
        raise KeyError(f"no sub-population for grades {sorted(grades)}")

    @property
    def total_size(self) -> int:
        return sum(len(gp.population) for gp in self.subpops) + (len(self.main) if self.main is not None else 0)


class CoevolutionProblem(NurseDirectProblem):
    """Direct nurse binding whose ``breed`` also advances the seven grade populations."""

    def __init__(
        self,
        instance: NurseInstance,
        options: DirectOptions | None = None,
        subpop_sizes: Sequence[int] = (100,) * len(GRADE_SETS),
        grade_based_share: float = 0.5,
        migration: MigrationPolicy | None = None,
    ):
        super().__init__(instance, options)
        if len(subpop_sizes) != len(GRADE_SETS):
            raise GaConfigurationError("nurse.subpop_sizes", f"expected {len(GRADE_SETS)} sizes, got {len(subpop_sizes)}")
        if not 0.0 <= grade_based_share <= 1.0:
            raise GaConfigurationError("nurse.grade_based_share", f"must be in [0, 1], got {grade_based_share}")
        self.subpop_sizes = tuple(int(s) for s in subpop_sizes)
        self.grade_based_share = grade_based_share
        self.migration = migration or MigrationPolicy()
        self.layout: SubPopLayout | None = None

    @classmethod
    def from_settings(cls, instance: NurseInstance, settings: NurseSettings, algorithm: str) -> "CoevolutionProblem":
        return cls(
            instance,
            DirectOptions.from_settings(settings, algorithm),
            subpop_sizes=settings.subpop_sizes[: len(GRADE_SETS)],
            grade_based_share=settings.grade_based_share,
            migration=MigrationPolicy(
                mode=MigrationMode(settings.migration),
                rate=settings.migration_rate,
                every=settings.migration_every,
                k=settings.migration_k,
            ),
        )

    # ---------- sub-population scoring ----------

    def score(self, individual: Individual, gp: GradePopulation, ga: GeneticAlgorithm) -> Individual:
        objective, violation = sub_parts(individual.genotype, gp.grades, self.instance, ga.config.penalty.quadratic)
        individual.objective = objective
        individual.violation = violation
        individual.feasible = violation == 0
        individual.bonus = 0.0
        individual.extra = 0.0
        individual.evaluated = True
        apply_weight(individual, gp.penalty.w)
        if individual.feasible and (gp.best_feasible is None or objective < gp.best_feasible):
            gp.best_feasible = objective
        return individual

    def init_layout(self, ga: GeneticAlgorithm) -> SubPopLayout:
        subpops = []
        for grades, size in zip(GRADE_SETS, self.subpop_sizes):
            gp = GradePopulation(
                grades=grades,
                population=Population(members=[], capacity=size, name=f"grades-{''.join(map(str, sorted(grades)))}"),
                penalty=PenaltyState.start(ga.config.penalty),
            )
            gp.population.members = [
                self.score(Individual(genotype=self.random_roster(ga.rng)), gp, ga) for _ in range(size)
            ]
            self._update_penalty(gp)
            subpops.append(gp)
        assemblies = {grades: sub_assemblies(grades) for grades in GRADE_SETS}
        assemblies[frozenset()] = main_assemblies()
        logger.debug(f"initialised {len(subpops)} grade populations, sizes {self.subpop_sizes}")
        return SubPopLayout(subpops=subpops, assemblies=assemblies)

    def _update_penalty(self, gp: GradePopulation) -> None:
        best = gp.population.best()
        before = gp.penalty.w
        after = gp.penalty.observe(gp.best_feasible, best.fitness, best.violation, best.feasible)
        if after != before:
            gp.population.rescore(after)

    # ---------- breeding ----------

    def assemble(self, assembly: Assembly, layout: SubPopLayout, ga: GeneticAlgorithm) -> tuple[int, ...]:
        """Stitch grade blocks from one rank-selected member of each supplying population."""
        parents = [rank_select(layout.pop(supplier).population, 1, ga.rng)[0] for supplier, _ in assembly]
        covered = frozenset().union(*(block for _, block in assembly))
        parts = []
        for parent, (_, block) in zip(parents, assembly):
            parts += [(parent.genotype, self.instance.grade_segment(g)) for g in sorted(block)]
        # grades outside the target carry over from the first parent
        parts += [(parents[0].genotype, self.instance.grade_segment(g)) for g in sorted(ALL_GRADES - covered)]
        return fixed_point_crossover(parts, len(self.instance))

    def _children(self, population: Population, count: int, assemblies: list[Assembly],
                  layout: SubPopLayout, ga: GeneticAlgorithm) -> list[tuple[int, ...]]:
        cfg = ga.config
        genotypes: list[tuple[int, ...]] = []
        while len(genotypes) < count:
            if assemblies and ga.rng.random() < self.grade_based_share:
                assembly = assemblies[int(ga.rng.integers(len(assemblies)))]
                genotypes.append(self.mutate(self.assemble(assembly, layout, ga), ga))
                ga.count("grade_based_children")
                continue
            parents = rank_select(population, cfg.parents_per_crossover, ga.rng)
            for genotype in multi_parent_children([p.genotype for p in parents], cfg.crossover_p, ga.rng):
                if len(genotypes) == count:
                    break
                genotypes.append(self.mutate(genotype, ga))
        return genotypes

    def evolve_subpops(self, layout: SubPopLayout, ga: GeneticAlgorithm) -> None:
        """One generation of every grade population, bred from a consistent snapshot."""
        cfg = ga.config
        offspring = []
        for gp in layout.subpops:
            count = gp.population.capacity - elite_count(gp.population.capacity, cfg.elite_fraction)
            genotypes = self._children(gp.population, count, layout.assemblies[gp.grades], layout, ga)
            offspring.append([self.score(Individual(genotype=g), gp, ga) for g in genotypes])
        for gp, children in zip(layout.subpops, offspring):
            gp.population = replace(gp.population, children, cfg.elite_fraction, cfg.dedupe)
            self._update_penalty(gp)

    def main_children(self, layout: SubPopLayout, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        genotypes = self._children(layout.main, count, layout.assemblies[frozenset()], layout, ga)
        return [Individual(genotype=g) for g in genotypes]

    def breed(self, population: Population, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        if self.layout is None:
            self.layout = self.init_layout(ga)
        self.layout.main = population
        self.evolve_subpops(self.layout, ga)
        moved = migrate(self.layout, self.migration, ga.generation, self, ga)
        if moved:
            ga.count("migrants", moved)
        return self.main_children(self.layout, count, ga)


def _ranked_slots(population: Population) -> list[int]:
    return sorted(
        range(len(population.members)),
        key=lambda s: (rank_key(population.members[s], population.maximize), s),
    )


def migrate(
    layout: SubPopLayout,
    policy: MigrationPolicy,
    generation: int,
    problem: CoevolutionProblem,
    ga: GeneticAlgorithm,
) -> int:
    """
    Exchange members between populations; every population keeps its size.

    RANDOM moves each member with probability ``rate``; BEST_K sends each
    population's ``k`` best every ``every`` generations. Senders are fixed
    before any exchange, and a sender that was already traded away as a
    partner is skipped. The target is a random other population and the
    migrant trades places with a random member there. Main never gives up an
    elite: an elite migrant leaves as a copy and its partner takes a random
    non-elite main slot instead. Migrants are re-scored by their destination.

    Returns:
        int: number of migrations
    """
    if policy.mode is MigrationMode.NONE or layout.main is None:
        return 0
    if policy.mode is MigrationMode.BEST_K and generation % policy.every != 0:
        return 0

    pools = [gp.population for gp in layout.subpops] + [layout.main]
    main_index = len(pools) - 1
    rng = ga.rng

    senders: list[tuple[int, int, Individual]] = []
    for s, pool in enumerate(pools):
        if policy.mode is MigrationMode.RANDOM:
            slots = np.flatnonzero(rng.random(len(pool)) < policy.rate)
        else:
            slots = _ranked_slots(pool)[: policy.k]
        senders += [(s, int(slot), pool.members[int(slot)]) for slot in slots]

    main_ranked = _ranked_slots(layout.main)
    main_elites = elite_count(layout.main.capacity, ga.config.elite_fraction)
    elite_slots = {int(slot) for slot in main_ranked[:main_elites]}
    open_slots = [int(slot) for slot in main_ranked[main_elites:]]

    def into(t: int, genotype: tuple[int, ...]) -> Individual:
        if t == main_index:
            return ga.evaluate(Individual(genotype=genotype))
        return problem.score(Individual(genotype=genotype), layout.subpops[t], ga)

    moved = 0
    for s, slot, migrant in senders:
        if pools[s].members[slot] is not migrant:
            continue
        t = int(rng.choice([p for p in range(len(pools)) if p != s]))
        if t == main_index:
            if not open_slots:
                continue
            r = open_slots[int(rng.integers(len(open_slots)))]
        else:
            r = int(rng.integers(len(pools[t])))
        back = slot
        if s == main_index and slot in elite_slots:
            if not open_slots:
                continue
            back = open_slots[int(rng.integers(len(open_slots)))]
        partner = pools[t].members[r]
        pools[t].members[r] = into(t, migrant.genotype)
        pools[s].members[back] = into(s, partner.genotype)
        moved += 1
    return moved


def coevolve_generation(layout: SubPopLayout, problem: CoevolutionProblem, ga: GeneticAlgorithm) -> SubPopLayout:
    """Advance all eight populations by one generation, main included."""
    if layout.main is None:
        raise GaConfigurationError("layout.main", "main population missing")
    cfg = ga.config
    main = layout.main
    problem.evolve_subpops(layout, ga)
    migrate(layout, problem.migration, ga.generation, problem, ga)
    count = main.capacity - elite_count(main.capacity, cfg.elite_fraction)
    children = [ga.evaluate(child) for child in problem.main_children(layout, count, ga)]
    layout.main = replace(main, children, cfg.elite_fraction, cfg.dedupe)
    return layout
