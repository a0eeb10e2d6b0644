import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .models import N_GRADES, NurseInstance
from .patterns import DAYS_PER_WEEK, N_SHIFTS, SATURDAY, SUNDAY

logger = logging.getLogger(__name__)

TEAM_DAY_MINIMUM = 2
TEAM_NIGHT_MINIMUM = 1
WEEKEND_SHIFTS = (SUNDAY, SATURDAY, DAYS_PER_WEEK + SUNDAY, DAYS_PER_WEEK + SATURDAY)


@dataclass(frozen=True, eq=False)
class CoverState:
    """
    provided[k, s]: nurses of grade <= s+1 on shift k.
    shortfall[k, s]: max(demand[k, s] - provided[k, s], 0).
    surplus[k]: aggregate over-cover on shift k.
    """
    provided: np.ndarray
    shortfall: np.ndarray
    surplus: np.ndarray

    def violation(self, quadratic: bool = False) -> int:
        if quadratic:
            return int((self.shortfall ** 2).sum())
        return int(self.shortfall.sum())

    def shift_deltas(self) -> np.ndarray:
        """Per shift: minus the worst grade shortfall, else the aggregate surplus."""
        worst = self.shortfall.max(axis=1)
        return np.where(worst > 0, -worst, self.surplus)


@dataclass(frozen=True, eq=False)
class RosterEvaluation:
    objective: int
    violation: int
    fitness: float
    cover: CoverState

    @property
    def feasible(self) -> bool:
        return self.violation == 0


def _pattern_rows(roster: Sequence[int], instance: NurseInstance) -> np.ndarray:
    return instance.table.matrix[np.asarray(roster, dtype=np.int64)].astype(np.int64)


def cover_state(roster: Sequence[int], instance: NurseInstance) -> CoverState:
    provided = _pattern_rows(roster, instance).T @ instance.grade_at_most
    shortfall = np.maximum(instance.demand - provided, 0)
    surplus = np.maximum(provided[:, N_GRADES - 1] - instance.demand[:, N_GRADES - 1], 0)
    return CoverState(provided=provided, shortfall=shortfall, surplus=surplus)


def roster_objective(roster: Sequence[int], instance: NurseInstance) -> int:
    return int(instance.cost_matrix[np.arange(len(roster)), np.asarray(roster, dtype=np.int64)].sum())


def evaluate(
    roster: Sequence[int],
    instance: NurseInstance,
    w: float,
    quadratic: bool = False,
) -> RosterEvaluation:
    """
    Cost plus weighted under-cover; over-cover is free.

    Raises:
        RosterError: an assignment outside the nurse's feasible set
    """
    instance.check_roster(roster)
    cover = cover_state(roster, instance)
    objective = roster_objective(roster, instance)
    violation = cover.violation(quadratic)
    return RosterEvaluation(objective=objective, violation=violation, fitness=objective + w * violation, cover=cover)


def pseudo_demand(demand: np.ndarray) -> np.ndarray:
    """Per-grade share of the cumulative demand, clamped at zero."""
    demand = np.asarray(demand, dtype=np.int64)
    split = demand.copy()
    split[:, 1:] = np.maximum(np.diff(demand, axis=1), 0)
    return split


def sub_parts(
    roster: Sequence[int],
    grade_set: Iterable[int],
    instance: NurseInstance,
    quadratic: bool = False,
) -> tuple[int, int]:
    """
    (cost, violation) of the nurses whose grade is in ``grade_set``, judged
    against the pseudo demand those exact grades must meet.
    """
    grades = sorted(set(grade_set))
    if not grades:
        raise ValueError("grade_set must not be empty")
    columns = [g - 1 for g in grades]
    members = np.isin([n.grade for n in instance.nurses], grades)

    rows = np.asarray(roster, dtype=np.int64)
    objective = int(instance.cost_matrix[np.arange(len(rows))[members], rows[members]].sum())
    exact = _pattern_rows(roster, instance).T @ instance.exact_grade
    missing = np.maximum(pseudo_demand(instance.demand)[:, columns] - exact[:, columns], 0)
    violation = int((missing ** 2).sum()) if quadratic else int(missing.sum())
    return objective, violation


def sub_fitness(
    roster: Sequence[int],
    grade_set: Iterable[int],
    instance: NurseInstance,
    w: float,
    quadratic: bool = False,
) -> float:
    objective, violation = sub_parts(roster, grade_set, instance, quadratic)
    return objective + w * violation


class Balance(str, Enum):
    FEASIBLE = "feasible"
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"
    UNDECIDED = "undecided"


def classify_cover(day_deltas: Sequence[int], night_deltas: Sequence[int]) -> Balance:
    """
    Classify per-shift deltas (negative shortage, positive surplus).

    A shortage matched by a surplus on the same side can be fixed by moving
    one nurse; a shortage with nothing spare on its side, while the other
    side is short of nothing spare either, cannot.
    """
    c1 = any(d < 0 for d in day_deltas)
    c2 = any(d > 0 for d in day_deltas)
    c3 = any(d < 0 for d in night_deltas)
    c4 = any(d > 0 for d in night_deltas)
    if not c1 and not c3:
        return Balance.FEASIBLE
    if (c1 and c2 and not c3 and not c4) or (c3 and c4 and not c1 and not c2):
        return Balance.BALANCED
    if (c1 and not c2 and not c3) or (c3 and not c1 and not c4):
        return Balance.UNBALANCED
    return Balance.UNDECIDED


def classify_balance(roster: Sequence[int], instance: NurseInstance, cover: CoverState | None = None) -> Balance:
    deltas = (cover or cover_state(roster, instance)).shift_deltas()
    return classify_cover(deltas[:DAYS_PER_WEEK].tolist(), deltas[DAYS_PER_WEEK:].tolist())


def extended_penalty(roster: Sequence[int], instance: NurseInstance, w_head: float = 5.0, w_team: float = 5.0) -> float:
    """
    At most one head nurse per weekend shift; each team keeps two nurses on
    every day shift and one on every night.
    """
    rows = _pattern_rows(roster, instance)
    heads = np.array([n.is_head for n in instance.nurses], dtype=bool)
    head_excess = 0
    if heads.any():
        on_weekend = rows[heads][:, list(WEEKEND_SHIFTS)].sum(axis=0)
        head_excess = int(np.maximum(on_weekend - 1, 0).sum())

    team_gap = 0
    teams = sorted({n.team for n in instance.nurses if n.team is not None})
    minimum = np.array([TEAM_DAY_MINIMUM] * DAYS_PER_WEEK + [TEAM_NIGHT_MINIMUM] * (N_SHIFTS - DAYS_PER_WEEK))
    for team in teams:
        members = np.array([n.team == team for n in instance.nurses], dtype=bool)
        present = rows[members].sum(axis=0)
        team_gap += int(np.maximum(minimum - present, 0).sum())

    return w_head * head_excess + w_team * team_gap
