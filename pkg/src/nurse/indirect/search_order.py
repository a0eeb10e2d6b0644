"""
Per-nurse orders in which a decoder scans the feasible patterns. An order is
drawn once per run and then kept, so it also fixes how score ties break.
"""
from enum import Enum

import numpy as np

from ..models import NurseInstance
from ..patterns import PatternKind

BIASED_DAY_START = 0.75


class OrderKind(str, Enum):
    LOWDAY = "lowday"
    RAND = "rand"
    BIASED = "biased"
    CHEAPEST = "cheapest"
    RANDCOST = "randcost"


def _shuffled_sides(instance: NurseInstance, i: int, rng: np.random.Generator, day_first: float) -> tuple[int, ...]:
    feasible = instance.feasible[i]
    days = [j for j in feasible if instance.pattern(j).kind is PatternKind.DAY]
    nights = [j for j in feasible if instance.pattern(j).kind is PatternKind.NIGHT]
    combined = [j for j in feasible if instance.pattern(j).kind is PatternKind.COMBINED]
    days = [days[k] for k in rng.permutation(len(days))]
    nights = [nights[k] for k in rng.permutation(len(nights))]
    combined = [combined[k] for k in rng.permutation(len(combined))]
    sides = days + nights if rng.random() < day_first else nights + days
    return tuple(int(j) for j in sides + combined)


def make_search_order(kind: OrderKind | str, instance: NurseInstance, i: int, rng: np.random.Generator) -> tuple[int, ...]:
    """
    A permutation of the feasible set:

    - lowday: pattern index order, day patterns first
    - rand: days and nights shuffled separately, random starting side
    - biased: as rand, starting with the day side 75% of the time
    - cheapest: ascending cost, index order on ties
    - randcost: the cheapest order rotated to a random start, wrapping round
    """
    kind = OrderKind(kind)
    feasible = tuple(int(j) for j in instance.feasible[i])
    if kind is OrderKind.LOWDAY:
        return feasible
    if kind is OrderKind.RAND:
        return _shuffled_sides(instance, i, rng, 0.5)
    if kind is OrderKind.BIASED:
        return _shuffled_sides(instance, i, rng, BIASED_DAY_START)
    by_cost = sorted(feasible, key=lambda j: (instance.cost(i, j), j))
    if kind is OrderKind.CHEAPEST:
        return tuple(by_cost)
    start = int(rng.integers(len(by_cost)))
    return tuple(by_cost[start:] + by_cost[:start])


def make_search_orders(kind: OrderKind | str, instance: NurseInstance, rng: np.random.Generator) -> list[tuple[int, ...]]:
    return [make_search_order(kind, instance, i, rng) for i in range(len(instance))]
