from math import comb

import numpy as np
import pytest

from src.core.errors import InfeasibleSpecError
from src.nurse.costs import CostVariant
from src.nurse.generator import NurseGenSpec, generate_nurse_instance, micro_instance
from src.nurse.models import MAX_COST, NurseKind, PreferenceClass

UNFILTERED = {
    PreferenceClass.NEUTRAL,
    PreferenceClass.DAYS_IMPORTANT,
    PreferenceClass.NIGHTS_IMPORTANT,
    PreferenceClass.DAYS_PREFERRED,
    PreferenceClass.NIGHTS_PREFERRED,
}


def feasible_costs(instance) -> list[int]:
    return [instance.cost(i, j) for i in range(len(instance)) for j in instance.feasible[i]]


@pytest.mark.parametrize("variant", list(CostVariant))
def test_costs_in_range(variant):
    instance = generate_nurse_instance(NurseGenSpec(n_nurses=25, variant=variant), seed=3)

    assert instance.name == f"nurse-{variant.value}-3"
    assert all(0 <= c <= MAX_COST for c in feasible_costs(instance))


def test_feasible_set_sizes():
    instance = generate_nurse_instance(NurseGenSpec(n_nurses=25), seed=11)

    for i, nurse in enumerate(instance.nurses):
        if nurse.special or nurse.is_dummy or nurse.preference not in UNFILTERED:
            continue
        assert len(instance.feasible[i]) == comb(7, nurse.days) + comb(7, nurse.nights)


def test_regular_nurses_and_grades():
    instance = generate_nurse_instance(NurseGenSpec(n_nurses=25), seed=5)
    regular = [n for n in instance.nurses if n.kind is NurseKind.REGULAR]

    assert len(regular) == 25
    assert {n.grade for n in regular} == {1, 2, 3}
    assert [n.grade for n in instance.nurses] == sorted(n.grade for n in instance.nurses)


def test_same_seed_same_instance():
    spec = NurseGenSpec(n_nurses=20)
    a = generate_nurse_instance(spec, seed=8)
    b = generate_nurse_instance(spec, seed=8)

    assert (a.demand == b.demand).all()
    assert np.array_equal(a.cost_matrix, b.cost_matrix)


def test_head_nurses_and_teams():
    instance = generate_nurse_instance(NurseGenSpec(n_nurses=20, head_nurses=2, teams=3), seed=1)

    heads = [n for n in instance.nurses if n.is_head]
    grade_one = sum(n.grade == 1 for n in instance.nurses)

    assert len(heads) == min(2, grade_one)
    assert all(n.grade == 1 for n in heads)
    assert {n.team for n in instance.nurses if not n.is_dummy} == {0, 1, 2}
    assert instance.has_extensions


def test_bad_spec():
    with pytest.raises(InfeasibleSpecError):
        generate_nurse_instance(NurseGenSpec(n_nurses=1), seed=0)
    with pytest.raises(InfeasibleSpecError):
        generate_nurse_instance(NurseGenSpec(grade_mix=(0.5, 0.5, 0.5)), seed=0)


def test_micro_instance_shape():
    instance = micro_instance(4, seed=2)

    assert instance.name == "micro-2"
    assert len(instance) == 4
    assert all(len(f) == 7 for f in instance.feasible)
