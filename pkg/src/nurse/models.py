import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from ..core.errors import InstanceValidationError, PatternError, RosterError
from .patterns import DAYS_PER_WEEK, N_SHIFTS, SATURDAY, SUNDAY, WEEKDAYS, WEEKEND, PatternTable, ShiftPattern, enumerate_patterns

logger = logging.getLogger(__name__)

N_GRADES = 3
MAX_COST = 100
NO_REQUEST = 0

# a genotype: one global pattern index per nurse, in instance (grade-sorted) order
Roster = tuple[int, ...]


class PreferenceClass(str, Enum):
    DAYS_ONLY = "days_only"
    NIGHTS_ONLY = "nights_only"
    DAYS_IMPORTANT = "days_important"
    NIGHTS_IMPORTANT = "nights_important"
    DAYS_PREFERRED = "days_preferred"
    NIGHTS_PREFERRED = "nights_preferred"
    NEUTRAL = "neutral"


class NurseKind(str, Enum):
    REGULAR = "regular"
    WEEKDAY_DUMMY = "weekday_dummy"
    WEEKEND_DUMMY = "weekend_dummy"
    BANK = "bank"


@dataclass(frozen=True)
class NurseHistory:
    """
    What the nurse worked in the previous weeks.

    Attributes:
        last_pattern: last week's 14 slots, or None for a new nurse
        nights_week_before: nights were worked two weeks ago
        last_week_cost: cost of last week's pattern, carried into this week
    """
    last_pattern: tuple[int, ...] | None = None
    nights_week_before: bool = False
    last_week_cost: int = 0

    @property
    def worked_last_week(self) -> tuple[int, ...]:
        if self.last_pattern is None:
            return (0,) * DAYS_PER_WEEK
        return tuple(d | n for d, n in zip(self.last_pattern[:DAYS_PER_WEEK], self.last_pattern[DAYS_PER_WEEK:]))

    @property
    def nights_last_week(self) -> bool:
        return self.last_pattern is not None and any(self.last_pattern[DAYS_PER_WEEK:])

    @property
    def weekend_last_week(self) -> bool:
        worked = self.worked_last_week
        return bool(worked[SATURDAY] and worked[SUNDAY])


@dataclass(frozen=True)
class NurseSpec:
    """
    One nurse and her contract.

    ``requests[k]`` is the grade (1-5) of a request not to work shift ``k``;
    0 means no request. A combined contract (``combined`` set) works
    ``days`` day shifts and ``nights`` night shifts in the same week.
    """
    id: int
    grade: int
    days: int
    nights: int
    combined: int | None = None
    preference: PreferenceClass = PreferenceClass.NEUTRAL
    requests: tuple[int, ...] = (NO_REQUEST,) * N_SHIFTS
    history: NurseHistory = field(default_factory=NurseHistory)
    is_head: bool = False
    team: int | None = None
    kind: NurseKind = NurseKind.REGULAR

    @property
    def special(self) -> bool:
        return self.combined is not None

    @property
    def is_dummy(self) -> bool:
        return self.kind is not NurseKind.REGULAR

    @property
    def contract(self) -> tuple[int, int, int | None]:
        return self.days, self.nights, self.combined

    @property
    def allowed_days(self) -> tuple[int, ...] | None:
        if self.kind is NurseKind.WEEKDAY_DUMMY:
            return WEEKDAYS
        if self.kind is NurseKind.WEEKEND_DUMMY:
            return WEEKEND
        return None

    def problems(self) -> list[str]:
        found = []
        if self.grade not in (1, 2, 3):
            found.append(f"nurse {self.id}: grade {self.grade} not in 1..3")
        if not self.special and self.nights > self.days and self.days > 0:
            found.append(f"nurse {self.id}: standard contract works more nights ({self.nights}) than days ({self.days})")
        if len(self.requests) != N_SHIFTS:
            found.append(f"nurse {self.id}: expected {N_SHIFTS} request slots, got {len(self.requests)}")
        bad = [r for r in self.requests if r != NO_REQUEST and not 1 <= r <= 5]
        if bad:
            found.append(f"nurse {self.id}: request grades {bad} outside 1..5")
        if self.history.last_pattern is not None and len(self.history.last_pattern) != N_SHIFTS:
            found.append(f"nurse {self.id}: last week's pattern needs {N_SHIFTS} slots")
        return found


def candidate_patterns(nurse: NurseSpec) -> list[ShiftPattern]:
    """
    The nurse's feasible patterns before indexing.

    Only-classes drop the other side; ``PatternError`` propagates for
    contracts that work nothing.
    """
    days, nights = nurse.days, nurse.nights
    if nurse.special:
        return enumerate_patterns(days, nights, combined=nurse.combined)
    if nurse.preference is PreferenceClass.DAYS_ONLY:
        nights = 0
    elif nurse.preference is PreferenceClass.NIGHTS_ONLY:
        days = 0
    if days == 0 and nights == 0:
        return []
    return enumerate_patterns(days, nights, allowed_days=nurse.allowed_days)


def validate_demand(demand: np.ndarray) -> list[str]:
    found = []
    if demand.shape != (N_SHIFTS, N_GRADES):
        return [f"demand must be {N_SHIFTS}x{N_GRADES}, got {demand.shape}"]
    if (demand < 0).any():
        found.append("demand has negative entries")
    decreasing = np.nonzero((np.diff(demand, axis=1) < 0).any(axis=1))[0]
    if decreasing.size:
        found.append(f"cumulative demand decreases across grades on shifts {decreasing.tolist()}")
    return found


@dataclass(frozen=True, eq=False)
class NurseInstance:
    """
    An immutable nurse rostering instance.

    Nurses are held sorted by grade, so every grade occupies one contiguous
    segment of the genotype. ``cost_matrix[i, j]`` is the cost of pattern
    ``j`` for nurse ``i`` when feasible, and -1 elsewhere.
    """
    name: str
    nurses: tuple[NurseSpec, ...]
    demand: np.ndarray
    table: PatternTable
    feasible: tuple[tuple[int, ...], ...]
    cost_matrix: np.ndarray

    @classmethod
    def build(
        cls,
        nurses: Sequence[NurseSpec],
        demand: Sequence[Sequence[int]] | np.ndarray,
        costs: Mapping[int, Sequence[int]] | None = None,
        name: str = "nurse",
        cost_builder=None,
    ) -> "NurseInstance":
        """
        Index patterns, build feasible sets and costs, then validate.

        Args:
            costs: explicit cost rows keyed by nurse id, aligned with that
                nurse's feasible set; overrides ``cost_builder``
            cost_builder: ``f(nurse, patterns) -> row``; defaults to the
                structured builder

        Raises:
            InstanceValidationError: any invariant broken
        """
        from .costs import build_pij

        builder = cost_builder or (lambda nurse, patterns: build_pij(nurse, patterns))
        ordered = tuple(sorted(nurses, key=lambda n: n.grade))
        demand = np.asarray(demand, dtype=np.int64)
        problems = validate_demand(demand)
        ids = [n.id for n in ordered]
        if len(set(ids)) != len(ids):
            problems.append("nurse ids are not unique")

        table = PatternTable()
        feasible = []
        rows = []
        for nurse in ordered:
            problems.extend(nurse.problems())
            try:
                patterns = candidate_patterns(nurse)
            except PatternError as e:
                problems.append(f"nurse {nurse.id}: {e.message}")
                patterns = []
            if not patterns:
                problems.append(f"nurse {nurse.id}: empty feasible pattern set")
            feasible.append(tuple(table.add(p) for p in patterns))
            if costs is not None and nurse.id in costs:
                row = [int(c) for c in costs[nurse.id]]
                if len(row) != len(patterns):
                    problems.append(f"nurse {nurse.id}: {len(row)} costs for {len(patterns)} patterns")
            elif patterns and not nurse.problems():
                row = list(builder(nurse, patterns))
            else:
                row = [0] * len(patterns)
            rows.append(row)

        if problems:
            raise InstanceValidationError(name, problems)

        matrix = np.full((len(ordered), len(table)), -1, dtype=np.int64)
        for i, (indices, row) in enumerate(zip(feasible, rows)):
            matrix[i, list(indices)] = row
        instance = cls(name, ordered, demand, table, tuple(feasible), matrix)
        instance.validate()
        logger.debug(f"instance {name}: {len(ordered)} nurses, {len(table)} patterns")
        return instance

    def problems(self) -> list[str]:
        found = validate_demand(self.demand)
        for i, nurse in enumerate(self.nurses):
            if not self.feasible[i]:
                found.append(f"nurse {nurse.id}: empty feasible pattern set")
                continue
            row = self.cost_matrix[i, list(self.feasible[i])]
            if (row < 0).any() or (row > MAX_COST).any():
                found.append(f"nurse {nurse.id}: costs outside 0..{MAX_COST}")
        return found

    def validate(self) -> "NurseInstance":
        problems = self.problems()
        if problems:
            raise InstanceValidationError(self.name, problems)
        return self

    def __len__(self) -> int:
        return len(self.nurses)

    @property
    def n_patterns(self) -> int:
        return len(self.table)

    @cached_property
    def grade_at_most(self) -> np.ndarray:
        """1 when nurse i may cover a grade-s requirement (grade <= s)."""
        grades = np.array([n.grade for n in self.nurses])
        return (grades[:, None] <= np.arange(1, N_GRADES + 1)[None, :]).astype(np.int64)

    @cached_property
    def exact_grade(self) -> np.ndarray:
        """1 when nurse i is exactly of grade s."""
        grades = np.array([n.grade for n in self.nurses])
        return (grades[:, None] == np.arange(1, N_GRADES + 1)[None, :]).astype(np.int64)

    def grade_segment(self, grade: int) -> range:
        positions = [i for i, n in enumerate(self.nurses) if n.grade == grade]
        if not positions:
            return range(0, 0)
        return range(positions[0], positions[-1] + 1)

    def cost(self, i: int, j: int) -> int:
        return int(self.cost_matrix[i, j])

    def pattern(self, j: int) -> ShiftPattern:
        return self.table[j]

    def check_roster(self, roster: Sequence[int]) -> None:
        if len(roster) != len(self.nurses):
            raise InstanceValidationError(self.name, [f"roster has {len(roster)} genes for {len(self.nurses)} nurses"])
        for i, j in enumerate(roster):
            if not 0 <= j < self.n_patterns or self.cost_matrix[i, j] < 0:
                raise RosterError(self.nurses[i].id, j)

    @cached_property
    def has_extensions(self) -> bool:
        return any(n.is_head or n.team is not None for n in self.nurses)
