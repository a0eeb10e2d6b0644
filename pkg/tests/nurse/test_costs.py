import numpy as np
import pytest

from src.core.errors import InstanceValidationError
from src.nurse.costs import (
    CostVariant,
    build_pij,
    continuity_cost,
    finalize_cost,
    random_pij,
    request_cost,
    rotation_cost,
    stretch_cost,
)
from src.nurse.models import NurseHistory, NurseKind, NurseSpec, PreferenceClass
from src.nurse.patterns import ShiftPattern, enumerate_patterns


def p(label: str) -> ShiftPattern:
    return ShiftPattern.from_label(label)


def history(label: str, **kwargs) -> NurseHistory:
    return NurseHistory(last_pattern=p(label).bits, **kwargs)


def nurse(**kwargs) -> NurseSpec:
    defaults = dict(id=1, grade=2, days=5, nights=4)
    defaults.update(kwargs)
    return NurseSpec(**defaults)


def requests_on(slot: int, grade: int) -> tuple[int, ...]:
    requests = [0] * 14
    requests[slot] = grade
    return tuple(requests)


# ---------- 汇总 ----------

def test_perfect_pattern_costs_zero():
    assert build_pij(nurse(), [p("1111100|0")]) == (0,)


def test_grade_five_request_hits_cap():
    n = nurse(requests=requests_on(0, 5))

    assert build_pij(n, [p("1111100|0")]) == (100,)


def test_request_on_a_free_shift_is_free():
    n = nurse(requests=requests_on(6, 5))

    assert build_pij(n, [p("1111100|0")]) == (0,)


@pytest.mark.parametrize("grade, cost", [(1, 3), (2, 8), (3, 12), (4, 18)])
def test_request_grades(grade, cost):
    assert request_cost(requests_on(0, grade), p("1111100|0")) == cost


def test_request_grade_out_of_range():
    with pytest.raises(InstanceValidationError):
        request_cost(requests_on(0, 6), p("1111100|0"))


def test_days_important_adds_twelve_on_nights():
    night = p("0|1111000")

    assert build_pij(nurse(preference=PreferenceClass.DAYS_IMPORTANT), [night]) == (12,)
    assert build_pij(nurse(preference=PreferenceClass.NEUTRAL), [night]) == (0,)


def test_nights_preferred_adds_three_on_days():
    assert build_pij(nurse(preference=PreferenceClass.NIGHTS_PREFERRED), [p("1111100|0")]) == (3,)


def test_extra_request_never_lowers_cost():
    rng = np.random.default_rng(4)
    patterns = enumerate_patterns(5, 4)
    for _ in range(50):
        base = tuple(int(g) if rng.random() < 0.2 else 0 for g in rng.integers(1, 6, size=14))
        slot = int(rng.integers(14))
        more = list(base)
        more[slot] = int(rng.integers(1, 6))
        before = build_pij(nurse(requests=base), patterns)
        after = build_pij(nurse(requests=tuple(more)), patterns)

        assert all(b >= a for a, b in zip(before, after)) or base[slot] > more[slot]


# ---------- 各项规则 ----------

def test_stretch_counts_last_week():
    assert stretch_cost(history("1111111|0"), p("1111100|0")) == 5
    assert stretch_cost(history("1111110|0"), p("1111100|0")) == 0


def test_continuity_clashes():
    # last week ended off-on, this week starts with a day off
    assert continuity_cost(history("0000001|0"), p("0111110|0")) == 3
    # last week ended off, this week starts on-off
    assert continuity_cost(history("1111100|0"), p("1011110|0")) == 3
    assert continuity_cost(NurseHistory(), p("1011110|0")) == 0


def test_night_rotation():
    worked_nights = history("0|1110000", nights_week_before=True)

    assert rotation_cost(worked_nights, p("0|0001111")) == 15
    assert rotation_cost(worked_nights, p("0111100|0")) == 0


def test_weekend_rotation():
    assert rotation_cost(history("1000001|0"), p("0111111|0")) == 1
    assert rotation_cost(history("1000001|0"), p("0111110|0")) == 0


@pytest.mark.parametrize("raw, last_week, expected", [
    (91, 0, 100),
    (90, 0, 89),
    (1, 5, 0),
    (11, 5, 15),
    (90, 20, 100),
])
def test_finalize_cost(raw, last_week, expected):
    assert finalize_cost(raw, last_week) == expected


# ---------- 变体 ----------

def test_high_pattern_costs_are_multiples_of_twenty():
    row = build_pij(nurse(), enumerate_patterns(5, 0), variant=CostVariant.HIGH_PATTERN)

    assert set(row) <= {0, 20, 40, 60}
    assert 0 in row and len(set(row)) > 1


def test_random_costs_in_range():
    row = random_pij(nurse(), enumerate_patterns(5, 4), np.random.default_rng(0))

    assert len(row) == 56
    assert all(0 <= c <= 100 for c in row)


def test_dummies_cost_nothing():
    dummy = nurse(days=1, nights=0, grade=3, kind=NurseKind.BANK)
    patterns = enumerate_patterns(1, 0)

    assert set(random_pij(dummy, patterns, np.random.default_rng(0))) == {0}
    assert set(build_pij(dummy, patterns)) == {0}


def test_prev_week_overrides_own_history():
    n = nurse(history=history("0|1110000"))
    night = p("0|0001111")

    assert build_pij(n, [night]) == (10,)
    assert build_pij(n, [night], prev_week=NurseHistory()) == (0,)
