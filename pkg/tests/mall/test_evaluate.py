import dataclasses

import numpy as np
import pytest

from src.mall.evaluate import (
    area_pseudo_fitness,
    count_efficiency,
    efficiency_table,
    evaluate_layout,
    layout_stats,
    location_rents,
    size_efficiency,
    upper_bound,
    violation_terms,
)
from src.mall.generator import generate_instance
from src.mall.models import SizeCaps

from .builders import FIXTURE_LAYOUT, five_area_instance


@pytest.fixture
def instance():
    return five_area_instance()


@pytest.fixture
def stats(instance):
    return layout_stats(FIXTURE_LAYOUT, instance)


# ---------- 效率系数 ----------

@pytest.mark.parametrize("n, expected", [(0, 0.0), (1, 10.0), (2, 11.5), (3, 13.0), (4, 12.25), (7, 88 / 7)])
def test_size_efficiency(n, expected):
    assert size_efficiency(n) == pytest.approx(expected, abs=1e-9)


def test_size_efficiency_seven_locations():
    assert size_efficiency(7) == pytest.approx(12.5714, abs=1e-4)


@pytest.mark.parametrize("t, c, expected", [(5, 5, 10.0), (4, 5, 9.0), (6, 5, 9.0), (15, 5, 0.0), (20, 5, 0.0)])
def test_count_efficiency(t, c, expected):
    assert count_efficiency(t, c) == expected


def test_count_efficiency_vectorised():
    assert count_efficiency(np.array([3, 9]), np.array([3, 4])).tolist() == [10.0, 5.0]


def test_efficiency_table_override(instance):
    custom = dataclasses.replace(instance, efficiency=(0.0, 8.0, 9.0))
    table = efficiency_table(custom)

    assert table[:4].tolist() == [0.0, 8.0, 9.0, 13.0]
    assert efficiency_table(instance)[2] == 11.5


# ---------- 布局统计 ----------

def test_layout_stats(stats):
    assert stats.totals.tolist() == [3, 6, 5, 1, 2]
    assert stats.counts[0, 4] == 3
    assert stats.shops_by_size == (8, 3, 1)
    assert stats.group_complete[:, 0].tolist() == [0, 0, 0, 0, 1]


# ---------- 租金 ----------

def test_worked_rents(instance, stats):
    rents = location_rents(stats, instance) - instance.fixed_rent

    # small shop, area of attractiveness 5, no group, five below its ideal count
    assert rents[3, 0] == pytest.approx(2500.0)
    # large shop, area of attractiveness 25, its group complete, ideal count
    assert rents[0, 4] == pytest.approx(39000.0)
    # medium shop, area of attractiveness 15, no group, one below its ideal count
    assert rents[4, 2] == pytest.approx(15525.0)


def test_fixed_rent_added_per_location(instance, stats):
    assert location_rents(stats, instance)[0, 4] == pytest.approx(40500.0)


def test_total_rent_and_fitness(instance, stats):
    result = evaluate_layout(FIXTURE_LAYOUT, instance, w=50.0, rent_scale=1000.0)
    expected = float((stats.counts * location_rents(stats, instance)).sum())

    assert result.rent == pytest.approx(expected)
    assert result.violation == 1
    assert not result.feasible
    assert result.fitness == pytest.approx(expected / 1000.0 - 50.0)


# ---------- 约束 ----------

def test_violation_terms(instance, stats):
    tight = dataclasses.replace(instance, size_caps=SizeCaps(6, 2, 1))
    terms = violation_terms(stats, tight)

    assert terms[:5].tolist() == [0, 0, 0, 1, 0]
    assert terms[5:10].tolist() == [0] * 5
    assert terms[10:].tolist() == [2, 1, 0]


def test_linear_and_quadratic_violation(instance):
    tight = dataclasses.replace(instance, size_caps=SizeCaps(6, 2, 1))

    assert evaluate_layout(FIXTURE_LAYOUT, tight, 1.0).violation == 4
    assert evaluate_layout(FIXTURE_LAYOUT, tight, 1.0, quadratic=True).violation == 6


def test_feasible_when_counts_within_bounds(instance):
    layout = (3,) + FIXTURE_LAYOUT[1:11] + (3,) + FIXTURE_LAYOUT[12:]

    assert evaluate_layout(layout, instance, 10.0).feasible


# ---------- 上界与区域伪适应度 ----------

@pytest.mark.parametrize("set_id, expected", [(4, 2_640_000.0), (1, 528_000.0)])
def test_upper_bound(set_id, expected):
    assert upper_bound(generate_instance(set_id, seed=1)) == pytest.approx(expected)


def test_area_pseudo_fitness(instance):
    # three type-0 locations at 25*12*13 + 1500 each, one type-1 and one type-2 at 25*12*10
    assert area_pseudo_fitness(FIXTURE_LAYOUT, 4, instance) == pytest.approx(22200.0)


def test_area_pseudo_fitness_ignores_other_areas(instance):
    other = (4,) * 12 + FIXTURE_LAYOUT[12:]

    assert area_pseudo_fitness(other, 4, instance) == area_pseudo_fitness(FIXTURE_LAYOUT, 4, instance)
