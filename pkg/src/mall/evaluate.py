"""
Mall rent and constraint violation.

Each location of shop type j in area k earns the area's attractiveness
times three factors, plus the fixed rent of type j in area k:

- the group bonus for how many of j's groups are complete in area k
- the size efficiency of all type-j locations in area k
- the count efficiency of the mall-wide type-j total against its ideal count
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .models import LayoutStats, MallInstance

logger = logging.getLogger(__name__)

LARGE_FACTOR = 13.0
MEDIUM_FACTOR = 11.5
SMALL_FACTOR = 10.0
IDEAL_COUNT_FACTOR = 10

# optimistic yardsticks for the rent upper bound
BOUND_ATTRACTIVENESS = 15.0
BOUND_FIXED_RENT = 3000.0


def size_efficiency(n: int) -> float:
    """
    Mean unit factor of ``n`` same-type locations in one area.

    They form ``n // 3`` large shops (factor 13 per location) plus one
    medium shop of two locations (11.5) or one small shop (10) for the
    remainder. E(0) is 0.

    Examples:
        >>> size_efficiency(4)
        12.25
    """
    if n <= 0:
        return 0.0
    large, rest = divmod(int(n), 3)
    total = 3 * LARGE_FACTOR * large
    if rest == 2:
        total += 2 * MEDIUM_FACTOR
    elif rest == 1:
        total += SMALL_FACTOR
    return total / n


@lru_cache(maxsize=64)
def efficiency_table(instance: MallInstance) -> np.ndarray:
    """Size efficiency for 0..N locations, taking the instance's own table where it has one."""
    table = np.array([size_efficiency(n) for n in range(instance.n_locations + 1)])
    if instance.efficiency is not None:
        override = np.asarray(instance.efficiency[: len(table)], dtype=float)
        table[: len(override)] = override
    return table


def count_efficiency(t: int | np.ndarray, c: int | np.ndarray) -> float | np.ndarray:
    """max(10 - |t - c|, 0); vectorised over arrays."""
    value = np.maximum(IDEAL_COUNT_FACTOR - np.abs(np.asarray(t) - np.asarray(c)), 0)
    return float(value) if np.ndim(value) == 0 else value.astype(float)


def _type_area_counts(layout: Sequence[int], instance: MallInstance) -> np.ndarray:
    genes = np.asarray(layout, dtype=np.int64)
    flat = genes * instance.n_areas + instance.area_of
    return np.bincount(flat, minlength=instance.n_types * instance.n_areas).reshape(instance.n_types, instance.n_areas)


def layout_stats(layout: Sequence[int], instance: MallInstance) -> LayoutStats:
    counts = _type_area_counts(layout, instance)
    large, rest = np.divmod(counts, 3)
    present = (counts > 0).astype(np.int64)
    # a group is complete in an area when all its members are present there
    members_present = present.T @ instance.groups
    return LayoutStats(
        counts=counts,
        totals=counts.sum(axis=1),
        large=large,
        medium=(rest == 2).astype(np.int64),
        small=(rest == 1).astype(np.int64),
        group_complete=(members_present == instance.group_sizes[None, :]).astype(np.int64),
    )


def group_factor(stats: LayoutStats, instance: MallInstance) -> np.ndarray:
    """(S, A) bonus B for every type and area; a type counts at most two complete groups."""
    complete = instance.groups @ stats.group_complete.T
    bonus = np.asarray(instance.group_bonus, dtype=float)
    return bonus[np.minimum(complete, len(bonus) - 1)]


def location_rents(stats: LayoutStats, instance: MallInstance) -> np.ndarray:
    """(S, A) rent earned by one location of type j in area k."""
    efficiency = efficiency_table(instance)[stats.counts]
    count_factor = count_efficiency(stats.totals, instance.ideal)[:, None]
    return instance.attractiveness[None, :] * group_factor(stats, instance) * efficiency * count_factor + instance.fixed_rent


def total_rent(stats: LayoutStats, instance: MallInstance) -> float:
    return float((stats.counts * location_rents(stats, instance)).sum())


def violation_terms(stats: LayoutStats, instance: MallInstance) -> np.ndarray:
    """Per-type shortfall below min, excess above max, then small/medium/large cap overflow."""
    below = np.maximum(instance.minimum - stats.totals, 0)
    above = np.maximum(stats.totals - instance.maximum, 0)
    caps = np.asarray(instance.size_caps.as_tuple())
    overflow = np.maximum(np.asarray(stats.shops_by_size) - caps, 0)
    return np.concatenate([below, above, overflow])


def layout_violation(stats: LayoutStats, instance: MallInstance, quadratic: bool = False) -> int:
    terms = violation_terms(stats, instance)
    return int((terms ** 2).sum() if quadratic else terms.sum())


@dataclass(frozen=True)
class LayoutEvaluation:
    rent: float
    violation: int
    fitness: float
    stats: LayoutStats

    @property
    def feasible(self) -> bool:
        return self.violation == 0


def evaluate_layout(
    layout: Sequence[int],
    instance: MallInstance,
    w: float,
    rent_scale: float = 1.0,
    quadratic: bool = False,
) -> LayoutEvaluation:
    """
    Rent, violation and penalised fitness ``rent / rent_scale - w * violation``.

    The solvers pass ``rent_scale=1000`` so the penalty weight works on rent
    in thousands.
    """
    stats = layout_stats(layout, instance)
    rent = total_rent(stats, instance)
    violation = layout_violation(stats, instance, quadratic)
    return LayoutEvaluation(rent=rent, violation=violation, fitness=rent / rent_scale - w * violation, stats=stats)


def upper_bound(instance: MallInstance) -> float:
    """
    Optimistic rent ceiling: every location a large shop in one complete
    group at its ideal count, in an area of attractiveness 15, plus the
    highest fixed rent.
    """
    per_location = instance.group_bonus[1] * LARGE_FACTOR * IDEAL_COUNT_FACTOR * BOUND_ATTRACTIVENESS + BOUND_FIXED_RENT
    return instance.n_locations * per_location


def area_pseudo_fitness(layout: Sequence[int], area: int, instance: MallInstance) -> float:
    """
    Rent of area ``area`` alone with the count efficiency and all
    constraints left out; genes outside the area have no effect.
    """
    span = instance.areas[area]
    genes = np.asarray(layout[span.start:span.stop], dtype=np.int64)
    counts = np.bincount(genes, minlength=instance.n_types)
    present = (counts > 0).astype(np.int64)
    complete = (present @ instance.groups == instance.group_sizes).astype(np.int64)
    bonus = np.asarray(instance.group_bonus, dtype=float)[np.minimum(instance.groups @ complete, 2)]
    per_location = instance.attractiveness[area] * bonus * efficiency_table(instance)[counts] + instance.fixed_rent[:, area]
    return float((counts * per_location).sum())
