"""
Direct nurse encoding: gene i is the pattern index of nurse i.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ...core.config.load_config import NurseSettings
from ...ga.engine import GeneticAlgorithm
from ...ga.population import Individual, Population, rank_key
from ...ga.selection import rank_select
from ...operators.mutation import single_gene_mutation
from ...operators.value_crossover import kpoint_crossover, multi_parent_children
from ..evaluate import Balance, classify_balance, evaluate, extended_penalty
from ..models import NurseInstance, Roster
from .repair import IncentiveConfig, hill_climb_repair, incentive_bonus, repair_targets
from .swaps import NurseNeighbourhood, adjacent_swap, chain_swap, special_swap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DirectOptions:
    swaps: bool = False
    swap_top_k: int = 10
    chain_max_cycle: int = 4
    incentives: IncentiveConfig | None = None # None 表示不使用平衡激励和修复
    extensions: bool = False
    w_head: float = 5.0
    w_team: float = 5.0

    @classmethod
    def from_settings(cls, settings: NurseSettings, algorithm: str) -> "DirectOptions":
        repair = algorithm in ("coevo-repair", "delta")
        return cls(
            swaps=settings.swaps and algorithm != "direct",
            swap_top_k=settings.swap_top_k,
            chain_max_cycle=settings.chain_max_cycle,
            incentives=IncentiveConfig.from_settings(settings) if repair else None,
            extensions=settings.extensions,
            w_head=settings.w_head,
            w_team=settings.w_team,
        )


class NurseDirectProblem:
    """
    Plain direct GA binding. Children come from parameterised uniform
    crossover (one per parent) or k-point crossover, then single-gene
    mutation inside each nurse's feasible set.

    With swaps or incentives switched on, ``improve`` runs the local moves
    on the best members and repairs the best Balanced rosters.
    """
    maximize = False

    def __init__(self, instance: NurseInstance, options: DirectOptions | None = None):
        self.instance = instance
        self.options = options or DirectOptions()
        self.domains = instance.feasible
        self.neighbourhood = NurseNeighbourhood(instance)
        # genotypes handed out by sample() before random ones; used by restarts
        self.seed_pool: list[Roster] = []

    def random_roster(self, rng: np.random.Generator) -> Roster:
        return tuple(int(domain[int(rng.integers(len(domain)))]) for domain in self.domains)

    def sample(self, rng: np.random.Generator, ga: GeneticAlgorithm) -> Individual:
        if self.seed_pool:
            return Individual(genotype=tuple(self.seed_pool.pop()))
        return Individual(genotype=self.random_roster(rng))

    def evaluate(self, individual: Individual, ga: GeneticAlgorithm) -> None:
        result = evaluate(individual.genotype, self.instance, ga.weight, quadratic=ga.config.penalty.quadratic)
        individual.objective = result.objective
        individual.violation = result.violation
        individual.feasible = result.feasible
        individual.extra = 0.0
        if self.options.extensions and self.instance.has_extensions:
            individual.extra = extended_penalty(
                individual.genotype, self.instance, self.options.w_head, self.options.w_team,
            )
        balance = classify_balance(individual.genotype, self.instance, cover=result.cover)
        individual.label = balance.value
        individual.bonus = incentive_bonus(balance, self.options.incentives) if self.options.incentives else 0.0

    def mutate(self, genotype: Roster, ga: GeneticAlgorithm) -> Roster:
        return single_gene_mutation(genotype, ga.config.per_gene_mutation_rate, self.domains, ga.rng)

    def internal_children(self, population: Population, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        cfg = ga.config
        children: list[Individual] = []
        while len(children) < count:
            if cfg.crossover == "kpoint":
                p1, p2 = rank_select(population, 2, ga.rng)
                offspring = list(kpoint_crossover(p1.genotype, p2.genotype, cfg.crossover_k, ga.rng))
            else:
                parents = rank_select(population, cfg.parents_per_crossover, ga.rng)
                offspring = multi_parent_children([p.genotype for p in parents], cfg.crossover_p, ga.rng)
            for genotype in offspring:
                if len(children) == count:
                    break
                children.append(Individual(genotype=self.mutate(genotype, ga)))
        return children

    def breed(self, population: Population, count: int, ga: GeneticAlgorithm) -> list[Individual]:
        return self.internal_children(population, count, ga)

    def improve(self, population: Population, ga: GeneticAlgorithm) -> None:
        if not self.options.swaps and self.options.incentives is None:
            return
        best_before = population.best()
        best_key = rank_key(best_before, population.maximize)
        originals: dict[int, Individual] = {}

        if self.options.swaps:
            self._swap_best(population, ga, originals)
        if self.options.incentives is not None:
            self._repair_best(population, ga, originals)

        # local moves may trade fitness for balance; the best member never gets worse
        if population.best_key() > best_key + 1e-9:
            for slot, original in originals.items():
                if original is best_before:
                    population.members[slot] = original
                    ga.count("restored_best")
                    break

    def _replace_member(self, population: Population, slot: int, genotype: Roster, ga: GeneticAlgorithm,
                        originals: dict[int, Individual]) -> None:
        old = population.members[slot]
        if genotype == old.genotype:
            return
        originals.setdefault(slot, old)
        population.members[slot] = ga.evaluate(Individual(genotype=genotype, aux=old.aux))

    def _slots_by_rank(self, population: Population) -> list[int]:
        return sorted(
            range(len(population.members)),
            key=lambda s: (rank_key(population.members[s], population.maximize), s),
        )

    def _swap_best(self, population: Population, ga: GeneticAlgorithm, originals: dict[int, Individual]) -> None:
        quadratic = ga.config.penalty.quadratic
        for slot in self._slots_by_rank(population)[: self.options.swap_top_k]:
            roster = population.members[slot].genotype
            roster = chain_swap(roster, self.instance, self.options.chain_max_cycle)
            roster = special_swap(roster, self.instance, ga.rng)
            roster = adjacent_swap(roster, self.instance, self.neighbourhood, quadratic)
            if roster != population.members[slot].genotype:
                ga.count("swaps")
            self._replace_member(population, slot, roster, ga, originals)

    def _repair_best(self, population: Population, ga: GeneticAlgorithm, originals: dict[int, Individual]) -> None:
        slots = self._slots_by_rank(population)
        balances = [Balance(population.members[s].label) for s in slots]
        for position in repair_targets([population.members[s] for s in slots], balances, self.options.incentives.top_k):
            slot = slots[position]
            roster = hill_climb_repair(
                population.members[slot].genotype, self.instance, ga.weight, ga.config.penalty.quadratic,
            )
            if roster != population.members[slot].genotype:
                ga.count("repairs")
            self._replace_member(population, slot, roster, ga, originals)
