"""
Roster-level local moves applied to the best members of a generation.

- chain swap: rotate patterns around a cycle of interchangeable nurses when
  that lowers the total preference cost; cover is unchanged
- special swap: a k/k nurse on days and a k/(k-1) nurse on nights trade
  sides, adding one night shift without losing a day
- adjacent swap: move one shift of a nurse from a surplus shift onto a
  shortage shift when that lowers the under-cover
"""
import itertools
import logging
from collections import defaultdict
from typing import Sequence

import numpy as np

from ..evaluate import cover_state
from ..models import NurseInstance, Roster
from ..patterns import DAYS_PER_WEEK, PatternKind, adjacency_lists

logger = logging.getLogger(__name__)


class NurseNeighbourhood:
    """Pattern neighbours inside each nurse's feasible set, built lazily per nurse."""

    def __init__(self, instance: NurseInstance):
        self.instance = instance
        self._adjacent: dict[int, dict[int, tuple[int, ...]]] = {}

    def adjacent(self, i: int, j: int) -> tuple[int, ...]:
        """Degree-one moves of the same kind from pattern ``j`` for nurse ``i``."""
        if i not in self._adjacent:
            self._adjacent[i] = adjacency_lists(self.instance.table, self.instance.feasible[i])
        return self._adjacent[i].get(j, ())

    def within(self, i: int, j: int, level: int) -> list[int]:
        """Patterns of nurse ``i`` within 1..level moves of ``j``."""
        return self.instance.table.neighbours(j, self.instance.feasible[i], max_degree=level)


def swap_groups(instance: NurseInstance) -> list[list[int]]:
    """Nurses sharing grade and contract; dummies never take part."""
    groups: dict[tuple, list[int]] = defaultdict(list)
    for i, nurse in enumerate(instance.nurses):
        if nurse.is_dummy:
            continue
        groups[(nurse.grade, nurse.contract)].append(i)
    return [members for members in groups.values() if len(members) >= 2]


def _best_cycle(
    roster: Sequence[int],
    members: Sequence[int],
    costs: np.ndarray,
    max_cycle: int,
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    best_gain = 0
    best_move = None
    for length in range(2, min(max_cycle, len(members)) + 1):
        for chosen in itertools.combinations(members, length):
            if len({roster[i] for i in chosen}) < 2:
                continue
            current = sum(int(costs[i, roster[i]]) for i in chosen)
            head, rest = chosen[0], chosen[1:]
            for order in itertools.permutations(rest):
                cycle = (head,) + order
                # each nurse takes the pattern of the next one round the cycle
                targets = tuple(roster[cycle[(k + 1) % length]] for k in range(length))
                new = [int(costs[i, t]) for i, t in zip(cycle, targets)]
                if min(new) < 0:
                    continue
                gain = current - sum(new)
                if gain > best_gain:
                    best_gain = gain
                    best_move = (cycle, targets)
    return best_move


def chain_swap(roster: Sequence[int], instance: NurseInstance, max_cycle: int = 4) -> Roster:
    """
    Apply the best cost-reducing cycle until none is left.

    Nurses in a cycle share grade and contract, so the cover is the same
    before and after; the objective strictly falls with every applied cycle.
    """
    current = list(roster)
    groups = swap_groups(instance)
    costs = instance.cost_matrix
    applied = 0
    while True:
        moved = False
        for members in groups:
            move = _best_cycle(current, members, costs, max_cycle)
            if move is None:
                continue
            cycle, targets = move
            for i, t in zip(cycle, targets):
                current[i] = t
            applied += 1
            moved = True
        if not moved:
            break
    if applied:
        logger.debug(f"chain swap applied {applied} cycle(s)")
    return tuple(current)


def _covers(pattern_nights: Sequence[int], required: Sequence[int]) -> bool:
    return all(have >= need for have, need in zip(pattern_nights, required))


def special_swap(roster: Sequence[int], instance: NurseInstance, rng: np.random.Generator) -> Roster:
    """
    Fix a one-night shortage the chain and adjacent moves cannot reach.

    Nurse A works k days or k nights and is on days; nurse B works k days or
    k-1 nights and is on nights. A moves to a night pattern that keeps all of
    B's nights plus one more (a short night when possible) and B takes a
    random day pattern. Day supply is unchanged and night supply rises by one.
    Preference costs are ignored. Only the first qualifying pair is swapped.
    """
    cover = cover_state(roster, instance)
    night_short = cover.shortfall[DAYS_PER_WEEK:].max(axis=1)
    if not night_short.any():
        return tuple(roster)
    table = instance.table

    for a, nurse_a in enumerate(instance.nurses):
        if nurse_a.special or nurse_a.is_dummy or nurse_a.days != nurse_a.nights:
            continue
        if table[roster[a]].kind is not PatternKind.DAY:
            continue
        k = nurse_a.days
        for b, nurse_b in enumerate(instance.nurses):
            if b == a or nurse_b.special or (nurse_b.days, nurse_b.nights) != (k, k - 1):
                continue
            if table[roster[b]].kind is not PatternKind.NIGHT:
                continue
            b_nights = table[roster[b]].nights
            night_options = [
                j for j in instance.feasible[a]
                if table[j].kind is PatternKind.NIGHT and _covers(table[j].nights, b_nights)
            ]
            day_options = [j for j in instance.feasible[b] if table[j].kind is PatternKind.DAY]
            if not night_options or not day_options:
                continue
            short_first = [
                j for j in night_options
                if any(night_short[d] > 0 and not b_nights[d] for d in range(DAYS_PER_WEEK) if table[j].nights[d])
            ]
            pool = short_first or night_options
            new = list(roster)
            new[a] = int(pool[int(rng.integers(len(pool)))])
            new[b] = int(day_options[int(rng.integers(len(day_options)))])
            logger.debug(f"special swap between nurses {nurse_a.id} and {nurse_b.id}")
            return tuple(new)
    return tuple(roster)


def adjacent_swap(
    roster: Sequence[int],
    instance: NurseInstance,
    neighbourhood: NurseNeighbourhood,
    quadratic: bool = False,
) -> Roster:
    """
    One pass over the nurses: a nurse working some surplus shift and no
    shortage shift moves to a degree-one neighbour that gives up a surplus
    shift for a shortage shift. A move is kept only when the violation falls.
    """
    current = list(roster)
    cover = cover_state(current, instance)
    violation = cover.violation(quadratic)
    matrix = instance.table.matrix
    for i in range(len(current)):
        if violation == 0:
            break
        deltas = cover.shift_deltas()
        bits = matrix[current[i]]
        worked = np.flatnonzero(bits)
        if not (deltas[worked] > 0).any() or (deltas[worked] < 0).any():
            continue
        for c in neighbourhood.adjacent(i, current[i]):
            target = matrix[c]
            gives_up = np.flatnonzero((bits == 1) & (target == 0))
            takes_on = np.flatnonzero((bits == 0) & (target == 1))
            if not (deltas[gives_up] > 0).all() or not (deltas[takes_on] < 0).all():
                continue
            trial = current.copy()
            trial[i] = c
            trial_cover = cover_state(trial, instance)
            trial_violation = trial_cover.violation(quadratic)
            if trial_violation < violation:
                current, cover, violation = trial, trial_cover, trial_violation
                break
    return tuple(current)
