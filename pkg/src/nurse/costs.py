"""
Nurse/pattern preference costs.

The structured builder adds up the ward's rules: pattern attractiveness,
day/night class, requests, work stretches, continuity with last week, night
and weekend rotation. The total is shifted down by one, pushed to 100 when it
exceeds 89, then carries last week's cost.
"""
import logging
from enum import Enum
from typing import Sequence

import numpy as np

from ..core.errors import InstanceValidationError
from .models import MAX_COST, NO_REQUEST, NurseHistory, NurseSpec, PreferenceClass
from .patterns import DAYS_PER_WEEK, SATURDAY, SUNDAY, ShiftPattern, base_cost

logger = logging.getLogger(__name__)

REQUEST_COSTS = {1: 3, 2: 8, 3: 12, 4: 18, 5: 90}
IMPORTANT_COST = 12
PREFERRED_COST = 3
MAX_STRETCH = 7
CONTINUITY_COST = 3
NIGHTS_LAST_WEEK_COST = 10
NIGHTS_WEEK_BEFORE_COST = 5
WEEKEND_COST = 1
CAP_THRESHOLD = 89
HIGH_PATTERN_FACTOR = 20


class CostVariant(str, Enum):
    STRUCTURED = "structured"
    RANDOM = "random"
    HIGH_PATTERN = "highcost"


def class_cost(preference: PreferenceClass, pattern: ShiftPattern) -> int:
    has_days = pattern.n_days > 0
    has_nights = pattern.n_nights > 0
    if preference is PreferenceClass.DAYS_IMPORTANT and has_nights:
        return IMPORTANT_COST
    if preference is PreferenceClass.NIGHTS_IMPORTANT and has_days:
        return IMPORTANT_COST
    if preference is PreferenceClass.DAYS_PREFERRED and has_nights:
        return PREFERRED_COST
    if preference is PreferenceClass.NIGHTS_PREFERRED and has_days:
        return PREFERRED_COST
    return 0


def request_cost(requests: Sequence[int], pattern: ShiftPattern) -> int:
    total = 0
    for slot, grade in enumerate(requests):
        if grade == NO_REQUEST or not pattern.bits[slot]:
            continue
        if grade not in REQUEST_COSTS:
            raise InstanceValidationError("cost matrix", [f"request grade {grade} outside 1..5"])
        total += REQUEST_COSTS[grade]
    return total


def _longest_run(values: Sequence[int]) -> int:
    best = current = 0
    for v in values:
        current = current + 1 if v else 0
        best = max(best, current)
    return best


def stretch_cost(history: NurseHistory, pattern: ShiftPattern) -> int:
    """Days beyond seven in a row, counting last week's closing streak."""
    last_week = history.worked_last_week
    trailing = 0
    for d in range(DAYS_PER_WEEK - 1, -1, -1):
        if not last_week[d]:
            break
        trailing += 1
    run = _longest_run([1] * trailing + list(pattern.worked_days))
    return max(run - MAX_STRETCH, 0)


def continuity_cost(history: NurseHistory, pattern: ShiftPattern) -> int:
    if history.last_pattern is None:
        return 0
    last_week = history.worked_last_week
    this_week = pattern.worked_days
    cost = 0
    # last week ended 01 and this week starts with a day off
    if not last_week[SATURDAY - 1] and last_week[SATURDAY] and not this_week[SUNDAY]:
        cost += CONTINUITY_COST
    # last week ended 0 and this week starts 10
    if not last_week[SATURDAY] and this_week[SUNDAY] and not this_week[SUNDAY + 1]:
        cost += CONTINUITY_COST
    return cost


def rotation_cost(history: NurseHistory, pattern: ShiftPattern) -> int:
    cost = 0
    if pattern.n_nights:
        if history.nights_last_week:
            cost += NIGHTS_LAST_WEEK_COST
        if history.nights_week_before:
            cost += NIGHTS_WEEK_BEFORE_COST
    worked = pattern.worked_days
    if history.weekend_last_week and (worked[SATURDAY] or worked[SUNDAY]):
        cost += WEEKEND_COST
    return cost


def finalize_cost(raw: int, last_week_cost: int = 0) -> int:
    cost = max(raw - 1, 0)
    if cost > CAP_THRESHOLD:
        cost = MAX_COST
    if last_week_cost and cost:
        cost = min(cost + last_week_cost, MAX_COST)
    return cost


def build_pij(
    nurse: NurseSpec,
    patterns: Sequence[ShiftPattern],
    prev_week: NurseHistory | None = None,
    variant: CostVariant = CostVariant.STRUCTURED,
) -> tuple[int, ...]:
    """
    Cost row for one nurse over her feasible patterns.

    Args:
        prev_week: history to use; defaults to the nurse's own
        variant: HIGH_PATTERN stretches the attractiveness term to
            ``(base - 1) * 20`` before the remaining rules

    Returns:
        tuple[int, ...]: costs in [0, 100], aligned with ``patterns``

    Raises:
        InstanceValidationError: a request grade outside 1..5
    """
    if nurse.is_dummy:
        return (0,) * len(patterns)
    history = prev_week if prev_week is not None else nurse.history
    row = []
    for pattern in patterns:
        base = base_cost(pattern)
        if variant is CostVariant.HIGH_PATTERN:
            # after the final deduction the base term is exactly (base - 1) * 20
            base = (base - 1) * HIGH_PATTERN_FACTOR + 1
        raw = (
            base
            + class_cost(nurse.preference, pattern)
            + request_cost(nurse.requests, pattern)
            + stretch_cost(history, pattern)
            + continuity_cost(history, pattern)
            + rotation_cost(history, pattern)
        )
        row.append(finalize_cost(raw, history.last_week_cost))
    return tuple(row)


def random_pij(nurse: NurseSpec, patterns: Sequence[ShiftPattern], rng: np.random.Generator) -> tuple[int, ...]:
    """Uniform costs in 0..100; dummy and bank nurses stay at zero."""
    if nurse.is_dummy:
        return (0,) * len(patterns)
    return tuple(int(c) for c in rng.integers(0, MAX_COST + 1, size=len(patterns)))
