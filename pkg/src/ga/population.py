import math
from dataclasses import dataclass, field
from typing import Any

from ..core.errors import EmptyPopulationError


@dataclass
class Individual:
    """
    One member of a population.

    ``genotype`` is a tuple of ints: a value string for the direct encodings
    or a permutation for the indirect ones. ``phenotype`` holds the decoded
    solution when the genotype is a permutation. ``aux`` carries the adaptive
    genes when the solver evolves them.

    Fitness is assembled from parts so a penalty-weight change can re-score a
    member without re-evaluating it:

        fitness = objective + sign * (w * (violation + bonus) + extra)

    with ``sign = +1`` for minimisation and ``-1`` for maximisation.
    """
    genotype: tuple[int, ...]
    aux: Any = None
    phenotype: tuple[int, ...] | None = None
    objective: float = 0.0
    violation: float = 0.0
    feasible: bool = False
    bonus: float = 0.0
    extra: float = 0.0
    fitness: float = math.inf
    evaluated: bool = False
    label: str = ""

    def copy(self) -> "Individual":
        return Individual(
            genotype=self.genotype,
            aux=self.aux,
            phenotype=self.phenotype,
            objective=self.objective,
            violation=self.violation,
            feasible=self.feasible,
            bonus=self.bonus,
            extra=self.extra,
            fitness=self.fitness,
            evaluated=self.evaluated,
            label=self.label,
        )

    @property
    def solution(self) -> tuple[int, ...]:
        """The solution the genotype stands for (decoded when indirect)."""
        return self.phenotype if self.phenotype is not None else self.genotype


def apply_weight(individual: Individual, weight: float, maximize: bool = False) -> float:
    sign = -1.0 if maximize else 1.0
    individual.fitness = individual.objective + sign * (
        weight * (individual.violation + individual.bonus) + individual.extra
    )
    if not math.isfinite(individual.fitness):
        raise ValueError(f"non-finite fitness for genotype {individual.genotype[:8]}...")
    return individual.fitness


def rank_key(individual: Individual, maximize: bool = False) -> float:
    """Lower is better, whatever the problem's sense."""
    return -individual.fitness if maximize else individual.fitness


@dataclass
class Population:
    members: list[Individual]
    capacity: int
    maximize: bool = False
    name: str = "main"
    extra: dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)

    def ranked(self) -> list[Individual]:
        """Best first; ties keep insertion order (stable sort)."""
        if not self.members:
            raise EmptyPopulationError(self.name)
        order = sorted(
            range(len(self.members)),
            key=lambda i: (rank_key(self.members[i], self.maximize), i),
        )
        return [self.members[i] for i in order]

    def best(self) -> Individual:
        return self.ranked()[0]

    def best_key(self) -> float:
        return rank_key(self.best(), self.maximize)

    def mean_fitness(self) -> float:
        return sum(m.fitness for m in self.members) / len(self.members)

    def rescore(self, weight: float) -> None:
        for member in self.members:
            apply_weight(member, weight, self.maximize)
