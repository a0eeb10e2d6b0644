import logging
import time
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from ..core.config.load_config import GaSettings, PenaltySettings
from ..core.errors import GaConfigurationError
from ..penalty.strategies import PenaltyParams, PenaltyState
from ..utils.seed_generator import make_rng, population_hash
from .population import Individual, Population, apply_weight, rank_key
from .replacement import elite_count, replace
from .tracking import BestTracker, GenerationStats, RunResult

logger = logging.getLogger(__name__)

BEST_OF_N = 5


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 100
    elite_fraction: float = 0.10
    stop_stagnation: int = 30
    max_generations: int = 1000
    per_gene_mutation_rate: float = 0.015
    crossover: str = "param_uniform"
    crossover_p: float = 0.8
    crossover_k: int = 2
    parents_per_crossover: int = 2
    mutation: str = "single_gene"
    dedupe: bool = True
    seeding: str = "random"
    penalty: PenaltyParams = field(default_factory=PenaltyParams)
    record_hashes: bool = False

    @classmethod
    def from_settings(cls, ga: GaSettings, penalty: PenaltySettings, record_hashes: bool = False) -> "GaConfig":
        return cls(
            population_size=ga.population_size,
            elite_fraction=ga.elite_fraction,
            stop_stagnation=ga.stop_stagnation,
            max_generations=ga.max_generations,
            per_gene_mutation_rate=ga.per_gene_mutation_rate,
            crossover=ga.crossover,
            crossover_p=ga.crossover_p,
            crossover_k=ga.crossover_k,
            parents_per_crossover=ga.parents_per_crossover,
            mutation=ga.mutation,
            dedupe=ga.dedupe,
            seeding=ga.seeding,
            penalty=PenaltyParams.from_settings(penalty),
            record_hashes=record_hashes,
        )


class ProblemBinding(Protocol):
    """
    What a problem supplies to the engine.

    ``evaluate`` fills objective, violation, feasible, bonus and extra; the
    engine turns those into fitness with the live penalty weight.
    ``improve`` is an optional local-search hook run on the replaced
    population (swaps, repair); it must call ``ga.evaluate`` on anything it
    changes.
    """
    maximize: bool

    def sample(self, rng: np.random.Generator, ga: "GeneticAlgorithm") -> Individual: ...

    def evaluate(self, individual: Individual, ga: "GeneticAlgorithm") -> None: ...

    def breed(self, population: Population, count: int, ga: "GeneticAlgorithm") -> list[Individual]: ...

    def improve(self, population: Population, ga: "GeneticAlgorithm") -> None: ...


def should_stop(history: list[float], stagnation: int) -> bool:
    """
    True when the last ``stagnation`` entries brought no strict improvement.

    ``history`` holds the best rank key per generation (lower is better).

    Raises:
        GaConfigurationError: stagnation <= 0
        ValueError: empty history
    """
    if stagnation <= 0:
        raise GaConfigurationError("stop_stagnation", f"must be positive, got {stagnation}")
    if not history:
        raise ValueError("history must not be empty")
    if len(history) <= stagnation:
        return False
    reference = min(history[:-stagnation])
    return min(history[-stagnation:]) >= reference


class GeneticAlgorithm:
    """
    One seeded generational GA run over a ``ProblemBinding``.

    Hooks receive this object and read ``rng``, ``weight``, ``generation``,
    ``config`` and ``best_feasible_objective`` from it.
    """

    def __init__(self, problem: ProblemBinding, config: GaConfig, seed: int):
        self.problem = problem
        self.config = config
        self.seed = seed
        self.rng = make_rng(seed)
        self.maximize = bool(problem.maximize)
        self.penalty = PenaltyState.start(config.penalty, maximize=self.maximize)
        self.tracker = BestTracker(self.maximize)
        self.generation = 0
        self.diagnostics: dict[str, int] = {}

    @property
    def weight(self) -> float:
        return self.penalty.w

    @property
    def best_feasible_objective(self) -> float | None:
        return self.tracker.best_feasible_objective

    def count(self, key: str, amount: int = 1) -> None:
        self.diagnostics[key] = self.diagnostics.get(key, 0) + amount

    def evaluate(self, individual: Individual) -> Individual:
        self.problem.evaluate(individual, self)
        individual.evaluated = True
        apply_weight(individual, self.weight, self.maximize)
        self.tracker.offer(individual)
        return individual

    def initial_population(self) -> Population:
        size = self.config.population_size
        members = []
        for _ in range(size):
            if self.config.seeding == "best_of_n":
                candidates = [self.evaluate(self.problem.sample(self.rng, self)) for _ in range(BEST_OF_N)]
                members.append(min(candidates, key=lambda c: rank_key(c, self.maximize)))
            else:
                members.append(self.evaluate(self.problem.sample(self.rng, self)))
        return Population(members=members, capacity=size, maximize=self.maximize)

    def update_penalty(self, population: Population) -> bool:
        best = population.best()
        before = self.penalty.w
        after = self.penalty.observe(self.best_feasible_objective, best.fitness, best.violation, best.feasible)
        if after != before:
            population.rescore(after)
            self.tracker.refresh_overall(population.best())
            return True
        return False

    def run(self) -> RunResult:
        started = time.perf_counter()
        cfg = self.config
        population = self.initial_population()
        self.update_penalty(population)

        # history counts strict improvements, each judged under the weight in force for that generation
        improvements = 0
        history = [0.0]
        trace = [self._stats(population)]
        hashes = [population_hash(m.genotype for m in population.members)] if cfg.record_hashes else []
        monotonicity_violations = 0
        size_violations = 0
        n_children = population.capacity - elite_count(population.capacity, cfg.elite_fraction)

        logger.debug(f"seed={self.seed} generation 0 best={population.best().fitness:.3f} w={self.weight:.3f}")

        while self.generation < cfg.max_generations:
            self.generation += 1
            previous_best = population.best_key()
            children = self.problem.breed(population, n_children, self)
            for child in children:
                if not child.evaluated:
                    self.evaluate(child)
            population = replace(population, children, cfg.elite_fraction, cfg.dedupe)
            self.problem.improve(population, self)

            current_best = population.best_key()
            if current_best > previous_best + 1e-9:
                monotonicity_violations += 1
                logger.warning(f"elitism violated at generation {self.generation}")
            if current_best < previous_best - 1e-9:
                improvements += 1
            self.update_penalty(population)
            if len(population) != population.capacity:
                size_violations += 1

            history.append(-float(improvements))
            trace.append(self._stats(population))
            if cfg.record_hashes:
                hashes.append(population_hash(m.genotype for m in population.members))

            if should_stop(history, cfg.stop_stagnation):
                break

        elapsed = time.perf_counter() - started
        logger.debug(
            f"seed={self.seed} finished after {self.generation} generations, "
            f"best feasible={self.best_feasible_objective}"
        )
        return RunResult(
            best_feasible=self.tracker.best_feasible,
            best_overall=self.tracker.best_overall,
            generations=self.generation,
            wall_time=elapsed,
            trace=trace,
            monotonicity_violations=monotonicity_violations,
            size_violations=size_violations,
            population_hashes=hashes,
            diagnostics=dict(self.diagnostics),
        )

    def _stats(self, population: Population) -> GenerationStats:
        return GenerationStats(
            generation=self.generation,
            best_fitness=population.best().fitness,
            mean_fitness=population.mean_fitness(),
            weight=self.weight,
            best_feasible_objective=self.best_feasible_objective,
        )


def run(problem: ProblemBinding, config: GaConfig, rng_seed: int) -> RunResult:
    """Run one GA; deterministic given (problem, config, seed)."""
    return GeneticAlgorithm(problem, config, rng_seed).run()
