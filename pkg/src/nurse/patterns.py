"""
Weekly shift patterns.

A pattern is a 14-slot 0/1 vector: slots 0-6 are the day shifts Sunday to
Saturday, slots 7-13 the matching nights. Patterns are collected in a global
``PatternTable``; genotypes and feasible sets refer to table indices.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..core.errors import PatternError

logger = logging.getLogger(__name__)

DAYS_PER_WEEK = 7
N_SHIFTS = 14
SUNDAY = 0
SATURDAY = 6
WEEKDAYS = (1, 2, 3, 4, 5)
WEEKEND = (SUNDAY, SATURDAY)

NIGHT_DAY_NIGHT_COST = 18
MAX_BASE_COST = 4


class PatternKind(str, Enum):
    DAY = "day"
    NIGHT = "night"
    COMBINED = "combined"


@dataclass(frozen=True)
class ShiftPattern:
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != N_SHIFTS or any(b not in (0, 1) for b in self.bits):
            raise PatternError(f"a shift pattern needs {N_SHIFTS} binary slots, got {self.bits}")
        if not any(self.bits):
            raise PatternError("shift pattern has no working shifts")

    @classmethod
    def from_label(cls, label: str) -> "ShiftPattern":
        """
        Parse ``"1111000|0000000"``; a lone ``0`` on either side means a free week.
        """
        day_part, _, night_part = label.partition("|")
        sides = []
        for part in (day_part, night_part or "0"):
            part = part.strip()
            if part == "0":
                part = "0" * DAYS_PER_WEEK
            if len(part) != DAYS_PER_WEEK or set(part) - {"0", "1"}:
                raise PatternError(f"cannot parse pattern label {label!r}")
            sides.extend(int(c) for c in part)
        return cls(tuple(sides))

    @property
    def days(self) -> tuple[int, ...]:
        return self.bits[:DAYS_PER_WEEK]

    @property
    def nights(self) -> tuple[int, ...]:
        return self.bits[DAYS_PER_WEEK:]

    @property
    def n_days(self) -> int:
        return sum(self.days)

    @property
    def n_nights(self) -> int:
        return sum(self.nights)

    @property
    def kind(self) -> PatternKind:
        if self.n_days and self.n_nights:
            return PatternKind.COMBINED
        return PatternKind.DAY if self.n_days else PatternKind.NIGHT

    @property
    def worked_days(self) -> tuple[int, ...]:
        """Calendar days on which any shift is worked."""
        return tuple(d | n for d, n in zip(self.days, self.nights))

    @property
    def label(self) -> str:
        return "".join(map(str, self.days)) + "|" + "".join(map(str, self.nights))

    def __str__(self) -> str:
        return self.label


def _choose(slots: Sequence[int], k: int, offset: int) -> list[tuple[int, ...]]:
    vectors = []
    for chosen in itertools.combinations(slots, k):
        bits = [0] * N_SHIFTS
        for slot in chosen:
            bits[offset + slot] = 1
        vectors.append(tuple(bits))
    return vectors


def enumerate_patterns(
    days: int,
    nights: int,
    combined: int | None = None,
    allowed_days: Sequence[int] | None = None,
) -> list[ShiftPattern]:
    """
    All patterns for a contract, in lexicographic slot order.

    Standard contracts give every ``C(7, days)`` day pattern followed by every
    ``C(7, nights)`` night pattern. A combined contract (``combined`` set)
    works exactly ``days`` day shifts and ``nights`` night shifts per week,
    never both on the same calendar day.

    Args:
        allowed_days: restrict day patterns to these calendar days (dummy nurses)

    Raises:
        PatternError: counts outside 0..7, or a contract that works nothing
    """
    for name, value in (("days", days), ("nights", nights)):
        if not 0 <= value <= DAYS_PER_WEEK:
            raise PatternError(f"{name} must be in 0..7, got {value}")

    if combined is not None:
        if combined != days + nights:
            raise PatternError(f"combined contract of {combined} shifts does not split into {days}+{nights}")
        if combined == 0:
            raise PatternError("nurse works nothing")
        if combined > DAYS_PER_WEEK:
            raise PatternError(f"combined contract of {combined} shifts needs more than one shift per day")
        patterns = []
        for day_slots in itertools.combinations(range(DAYS_PER_WEEK), days):
            free = [d for d in range(DAYS_PER_WEEK) if d not in day_slots]
            for night_slots in itertools.combinations(free, nights):
                bits = [0] * N_SHIFTS
                for d in day_slots:
                    bits[d] = 1
                for d in night_slots:
                    bits[DAYS_PER_WEEK + d] = 1
                patterns.append(ShiftPattern(tuple(bits)))
        return patterns

    if days == 0 and nights == 0:
        raise PatternError("nurse works nothing")

    day_slots = tuple(allowed_days) if allowed_days is not None else tuple(range(DAYS_PER_WEEK))
    vectors = []
    if days:
        vectors += _choose(day_slots, days, 0)
    if nights:
        vectors += _choose(range(DAYS_PER_WEEK), nights, DAYS_PER_WEEK)
    return [ShiftPattern(v) for v in vectors]


def is_night_day_night(pattern: ShiftPattern) -> bool:
    """Some day shift falls strictly between two night shifts, in time order."""
    timeline = []
    for d in range(DAYS_PER_WEEK):
        timeline.append("D" if pattern.days[d] else "")
        timeline.append("N" if pattern.nights[d] else "")
    worked = "".join(timeline)
    first_night = worked.find("N")
    last_night = worked.rfind("N")
    return first_night != -1 and "D" in worked[first_night:last_night]


def _rest_structure(worked: Sequence[int]) -> tuple[int, bool]:
    """(number of circular rest blocks, whether a lone working day splits two of them)"""
    if all(worked) or not any(worked):
        return (0 if all(worked) else 1), False
    # start on a block boundary so a run wrapping Saturday->Sunday stays whole
    start = next(d for d in range(DAYS_PER_WEEK) if worked[d] and not worked[d - 1])
    rotated = list(worked[start:]) + list(worked[:start])
    runs = [(value, len(list(group))) for value, group in itertools.groupby(rotated)]
    rest_blocks = sum(1 for value, _ in runs if value == 0)
    lone_day = rest_blocks >= 2 and any(value == 1 and length == 1 for value, length in runs)
    return rest_blocks, lone_day


def base_cost(pattern: ShiftPattern) -> int:
    """
    Attractiveness of a pattern, 1 (days off together) to 4; 18 for night-day-night.
    """
    if pattern.kind is PatternKind.COMBINED and is_night_day_night(pattern):
        return NIGHT_DAY_NIGHT_COST
    if pattern.kind is PatternKind.DAY:
        worked = pattern.days
    elif pattern.kind is PatternKind.NIGHT:
        worked = pattern.nights
    else:
        worked = pattern.worked_days
    blocks, lone_day = _rest_structure(worked)
    if blocks <= 1:
        return 1
    return min(2 + int(lone_day) + int(blocks >= 3), MAX_BASE_COST)


def adjacency_degree(a: ShiftPattern, b: ShiftPattern) -> int:
    """
    Number of working shifts that must move to turn ``a`` into ``b``.

    A day pattern against a night pattern counts every shift of the day
    pattern.

    Raises:
        PatternError: same-kind patterns with different shift counts, or a
            combined pattern against a single-kind one
    """
    if a.kind is b.kind:
        if (a.n_days, a.n_nights) != (b.n_days, b.n_nights):
            raise PatternError(f"patterns {a} and {b} work different numbers of shifts")
        return sum(1 for x, y in zip(a.bits, b.bits) if x and not y)
    kinds = {a.kind, b.kind}
    if kinds == {PatternKind.DAY, PatternKind.NIGHT}:
        return a.n_days if a.kind is PatternKind.DAY else b.n_days
    raise PatternError(f"no adjacency between a {a.kind.value} and a {b.kind.value} pattern")


def comparable(a: ShiftPattern, b: ShiftPattern) -> bool:
    try:
        adjacency_degree(a, b)
    except PatternError:
        return False
    return True


class PatternTable:
    """
    Global, append-only index of distinct shift patterns.
    """

    def __init__(self, patterns: Iterable[ShiftPattern] = ()):
        self._patterns: list[ShiftPattern] = []
        self._index: dict[ShiftPattern, int] = {}
        for pattern in patterns:
            self.add(pattern)

    def add(self, pattern: ShiftPattern) -> int:
        if pattern not in self._index:
            self._index[pattern] = len(self._patterns)
            self._patterns.append(pattern)
            self.__dict__.pop("matrix", None)
        return self._index[pattern]

    def index_of(self, pattern: ShiftPattern) -> int:
        try:
            return self._index[pattern]
        except KeyError:
            raise PatternError(f"pattern {pattern} is not in the table") from None

    def __len__(self) -> int:
        return len(self._patterns)

    def __getitem__(self, index: int) -> ShiftPattern:
        return self._patterns[index]

    def __iter__(self):
        return iter(self._patterns)

    @cached_property
    def matrix(self) -> np.ndarray:
        """(n_patterns, 14) int8 matrix of worked slots."""
        if not self._patterns:
            return np.zeros((0, N_SHIFTS), dtype=np.int8)
        return np.array([p.bits for p in self._patterns], dtype=np.int8)

    def degree(self, a: int, b: int) -> int:
        return adjacency_degree(self._patterns[a], self._patterns[b])

    def neighbours(self, j: int, candidates: Iterable[int], max_degree: int, min_degree: int = 1) -> list[int]:
        """Candidates of a comparable kind within ``min_degree..max_degree`` moves of ``j``."""
        found = []
        for c in candidates:
            if not comparable(self._patterns[j], self._patterns[c]):
                continue
            if min_degree <= self.degree(j, c) <= max_degree:
                found.append(c)
        return found


def adjacency_lists(table: PatternTable, candidates: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """
    Degree-one neighbours of each candidate, restricted to the same kind.
    """
    lists = {}
    for j in candidates:
        kind = table[j].kind
        lists[j] = tuple(
            c for c in table.neighbours(j, candidates, max_degree=1)
            if table[c].kind is kind
        )
    return lists
