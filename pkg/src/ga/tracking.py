from dataclasses import dataclass, field
from typing import Any

from .population import Individual, rank_key


@dataclass(frozen=True)
class SolutionRecord:
    genotype: tuple[int, ...]
    solution: tuple[int, ...]
    objective: float
    violation: float
    fitness: float
    feasible: bool
    aux: Any = None


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    best_fitness: float
    mean_fitness: float
    weight: float
    best_feasible_objective: float | None


@dataclass
class RunResult:
    best_feasible: SolutionRecord | None
    best_overall: SolutionRecord
    generations: int
    wall_time: float
    trace: list[GenerationStats] = field(default_factory=list)
    monotonicity_violations: int = 0
    size_violations: int = 0
    population_hashes: list[str] = field(default_factory=list)
    diagnostics: dict[str, int] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.best_feasible is not None


def snapshot(individual: Individual) -> SolutionRecord:
    return SolutionRecord(
        genotype=individual.genotype,
        solution=individual.solution,
        objective=individual.objective,
        violation=individual.violation,
        fitness=individual.fitness,
        feasible=individual.feasible,
        aux=individual.aux,
    )


class BestTracker:
    """
    Keeps the best feasible solution ever evaluated, not just the survivors,
    plus the best overall member seen so far.
    """

    def __init__(self, maximize: bool = False):
        self.maximize = maximize
        self.best_feasible: SolutionRecord | None = None
        self.best_overall: SolutionRecord | None = None

    def _better_objective(self, a: float, b: float) -> bool:
        return a > b if self.maximize else a < b

    def offer(self, individual: Individual) -> None:
        if individual.feasible and (
            self.best_feasible is None
            or self._better_objective(individual.objective, self.best_feasible.objective)
        ):
            self.best_feasible = snapshot(individual)
        if self.best_overall is None or rank_key(individual, self.maximize) < (
            -self.best_overall.fitness if self.maximize else self.best_overall.fitness
        ):
            self.best_overall = snapshot(individual)

    def refresh_overall(self, individual: Individual) -> None:
        """Re-anchor the overall best after a penalty re-weighting."""
        self.best_overall = snapshot(individual)

    @property
    def best_feasible_objective(self) -> float | None:
        return None if self.best_feasible is None else self.best_feasible.objective
