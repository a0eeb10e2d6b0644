"""
Demand smoothing before the roster is solved.

A 0/1 knapsack decides which nurses cover the nights at the smallest loss of
day shifts. Whatever day over-cover remains is spread onto the day demand,
weekdays first, and topped up with dummy nurses; a day shortage brings in
bank nurses who work one day shift each. Afterwards day supply equals the
adjusted day demand.
"""
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .models import N_GRADES, NurseKind, NurseSpec, PreferenceClass
from .patterns import DAYS_PER_WEEK, WEEKDAYS

logger = logging.getLogger(__name__)

AGGREGATE = N_GRADES - 1
DUMMY_GRADE = 3
FULL_WEEK = 7
WORKING_WEEK = 5


@dataclass
class SmoothingResult:
    demand: np.ndarray
    extra_nurses: list[NurseSpec] = field(default_factory=list)
    night_nurses: tuple[int, ...] = ()
    day_over_cover: int = 0
    night_shortfall: int = 0

    @property
    def day_supply(self) -> int:
        return int(self.demand[:DAYS_PER_WEEK, AGGREGATE].sum())


def _can_work_nights(nurse: NurseSpec) -> bool:
    return nurse.nights > 0 and nurse.preference is not PreferenceClass.DAYS_ONLY


def _can_work_days(nurse: NurseSpec) -> bool:
    return nurse.days > 0 and nurse.preference is not PreferenceClass.NIGHTS_ONLY


def choose_night_nurses(nurses: Sequence[NurseSpec], night_need: int) -> tuple[list[NurseSpec], int]:
    """
    Cover ``night_need`` night shifts with flexible nurses, losing as few day
    shifts as possible.

    Returns:
        (chosen nurses, night shifts still uncovered)
    """
    if night_need <= 0:
        return [], 0
    items = [n for n in nurses if _can_work_nights(n) and _can_work_days(n)]
    if sum(n.nights for n in items) < night_need:
        return items, night_need - sum(n.nights for n in items)

    positions = np.arange(night_need + 1)
    lost = np.full(night_need + 1, np.iinfo(np.int64).max // 2, dtype=np.int64)
    lost[0] = 0
    taken = np.zeros((len(items), night_need + 1), dtype=bool)
    for idx, nurse in enumerate(items):
        via = lost[np.maximum(positions - nurse.nights, 0)] + nurse.days
        take = via < lost
        lost = np.where(take, via, lost)
        taken[idx] = take

    chosen = []
    capacity = night_need
    for idx in range(len(items) - 1, -1, -1):
        if capacity > 0 and taken[idx, capacity]:
            chosen.append(items[idx])
            capacity = max(capacity - items[idx].nights, 0)
    chosen.reverse()
    return chosen, 0


def _dummy(nurse_id: int, kind: NurseKind, shifts: int) -> NurseSpec:
    return NurseSpec(
        id=nurse_id,
        grade=DUMMY_GRADE,
        days=shifts,
        nights=0,
        preference=PreferenceClass.DAYS_ONLY,
        kind=kind,
    )


def spread_day_surplus(demand: np.ndarray, surplus: int, next_id: int) -> list[NurseSpec]:
    """
    Raise the aggregate day demand in place so it absorbs ``surplus`` day
    shifts, returning the dummy nurses that fill the remainder.
    """
    extra = []
    day_rows = np.arange(DAYS_PER_WEEK)
    while surplus > FULL_WEEK:
        demand[day_rows, AGGREGATE] += 1
        surplus -= FULL_WEEK
    if surplus == FULL_WEEK:
        demand[day_rows, AGGREGATE] += 1
    elif surplus == FULL_WEEK - 1:
        demand[day_rows, AGGREGATE] += 1
        extra.append(_dummy(next_id, NurseKind.WEEKEND_DUMMY, FULL_WEEK - surplus))
    elif surplus == WORKING_WEEK:
        demand[list(WEEKDAYS), AGGREGATE] += 1
    elif 0 < surplus < WORKING_WEEK:
        demand[list(WEEKDAYS), AGGREGATE] += 1
        extra.append(_dummy(next_id, NurseKind.WEEKDAY_DUMMY, WORKING_WEEK - surplus))
    return extra


def knapsack_smooth(demand: np.ndarray | Sequence[Sequence[int]], nurses: Sequence[NurseSpec]) -> SmoothingResult:
    """
    Make the covering constraints tight.

    Nights-only nurses always work nights and days-only nurses never do;
    combined contracts contribute their fixed split. The knapsack picks the
    remaining night workers, then the day balance ``u`` (supply minus demand)
    is smoothed:

    - ``u > 7``: every day +1 until at most 7 remain
    - ``u == 7``: every day +1
    - ``u == 6``: every day +1 and a weekend dummy working one shift
    - ``u == 5``: weekdays +1
    - ``0 < u < 5``: weekdays +1 and a weekday dummy working ``5 - u`` shifts
    - ``u < 0``: one bank nurse per missing shift

    Returns:
        SmoothingResult: a new demand matrix and the nurses to append
    """
    adjusted = np.array(demand, dtype=np.int64, copy=True)
    night_demand = int(adjusted[DAYS_PER_WEEK:, AGGREGATE].sum())
    day_demand = int(adjusted[:DAYS_PER_WEEK, AGGREGATE].sum())

    regular = [n for n in nurses if not n.special]
    special = [n for n in nurses if n.special]
    forced = [n for n in regular if _can_work_nights(n) and not _can_work_days(n)]
    fixed_nights = sum(n.nights for n in forced) + sum(n.nights for n in special)

    night_nurses, night_shortfall = choose_night_nurses(regular, night_demand - fixed_nights)
    if night_shortfall:
        logger.warning(f"night demand exceeds night supply by {night_shortfall} shifts")

    on_nights = {n.id for n in forced} | {n.id for n in night_nurses}
    day_supply = sum(n.days for n in regular if n.id not in on_nights and _can_work_days(n))
    day_supply += sum(n.days for n in special)
    surplus = day_supply - day_demand

    next_id = max((n.id for n in nurses), default=0) + 1
    if surplus > 0:
        extra = spread_day_surplus(adjusted, surplus, next_id)
    else:
        extra = [
            _dummy(next_id + b, NurseKind.BANK, 1)
            for b in range(-surplus)
        ]
    if extra:
        logger.info(f"knapsack smoothing added {len(extra)} {extra[0].kind.value} nurse(s)")

    return SmoothingResult(
        demand=adjusted,
        extra_nurses=extra,
        night_nurses=tuple(sorted(on_nights)),
        day_over_cover=surplus,
        night_shortfall=night_shortfall,
    )
