"""
Aggregation of run records the way results are usually tabled for these
benchmarks: feasibility is the share of feasible runs, and the cost (nurse)
or rent (mall) is the average best per instance, where an instance no run
solved contributes a censored value (100 for nurse, 0 for mall). The sum is
divided by the number of solved instances.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from ..core.errors import AggregationError
from .records import RunRecord

logger = logging.getLogger(__name__)

CENSORED = {"nurse": 100.0, "mall": 0.0}


@dataclass(frozen=True)
class AggregateStats:
    feasibility: float
    cost_or_rent: float
    uncensored_mean: float | None
    n_instances: int
    n_solved: int
    runs: int
    mean_seconds: float
    per_instance_best: dict[str, float | None] = field(default_factory=dict)


def best_per_instance(records: Iterable[RunRecord], problem: str) -> dict[str, float | None]:
    """Best feasible objective per instance in first-seen order; None when no run was feasible."""
    best: dict[str, float | None] = {}
    for record in records:
        current = best.setdefault(record.instance, None)
        if not record.feasible or record.best_objective is None:
            continue
        value = record.best_objective
        if current is None:
            best[record.instance] = value
        elif problem == "mall":
            best[record.instance] = max(current, value)
        else:
            best[record.instance] = min(current, value)
    return best


def aggregate(records: Iterable[RunRecord], problem: str) -> AggregateStats:
    """
    Raises:
        AggregationError: no records, or an unknown problem
    """
    if problem not in CENSORED:
        raise AggregationError(f"unknown problem {problem!r}")
    records = list(records)
    if not records:
        raise AggregationError("cannot aggregate zero instances")

    best = best_per_instance(records, problem)
    solved = [v for v in best.values() if v is not None]
    unsolved = len(best) - len(solved)
    censor = CENSORED[problem]
    if solved:
        censored_mean = (sum(solved) + unsolved * censor) / len(solved)
        uncensored = sum(solved) / len(solved)
    else:
        censored_mean = censor
        uncensored = None
    if unsolved:
        logger.info(f"{unsolved} of {len(best)} instances unsolved, censored at {censor}")

    return AggregateStats(
        feasibility=sum(r.feasible for r in records) / len(records),
        cost_or_rent=censored_mean,
        uncensored_mean=uncensored,
        n_instances=len(best),
        n_solved=len(solved),
        runs=len(records),
        mean_seconds=sum(r.seconds for r in records) / len(records),
        per_instance_best=best,
    )


def aggregate_by_set(records: Iterable[RunRecord], problem: str) -> dict[tuple[str, str], AggregateStats]:
    """One aggregate per (algorithm, instance set), in first-seen order."""
    groups: dict[tuple[str, str], list[RunRecord]] = defaultdict(list)
    for record in records:
        groups[(record.algorithm, record.instance_set)].append(record)
    return {key: aggregate(group, problem) for key, group in groups.items()}
