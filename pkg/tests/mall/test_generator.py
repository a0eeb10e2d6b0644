import numpy as np
import pytest

from src.core.errors import InfeasibleSpecError
from src.mall.generator import (
    LINKED_SETS,
    MALL_SETS,
    MAX_AREA_SIZE,
    MIN_AREA_SIZE,
    TIGHT_SIZE_CAPS,
    draw_area_sizes,
    generate_instance,
    generate_linked,
    micro_mall_instance,
)
from src.mall.models import MAX_GROUP_SIZE, MIN_GROUP_SIZE


@pytest.mark.parametrize("set_id", sorted(MALL_SETS))
def test_set_dimensions(set_id):
    spec = MALL_SETS[set_id]
    instance = generate_instance(set_id, seed=2)

    assert instance.name == f"mall_set{set_id}_2"
    assert (instance.n_locations, instance.n_areas, instance.n_types, instance.n_groups) == (
        spec.n_locations, spec.n_areas, spec.n_types, spec.n_groups,
    )
    assert all(MIN_AREA_SIZE <= len(area) <= MAX_AREA_SIZE for area in instance.areas)
    assert all(MIN_GROUP_SIZE <= s <= MAX_GROUP_SIZE for s in instance.group_sizes)
    assert instance.groups.sum(axis=1).max() <= 2
    assert instance.ideal.sum() == spec.n_locations


def test_attractiveness_rises_by_area():
    instance = generate_instance(4, seed=9)

    assert instance.attractiveness.tolist() == sorted(instance.attractiveness.tolist())


def test_loose_counts_have_no_minimum():
    instance = generate_instance(3, seed=4)

    assert instance.minimum.sum() == 0
    assert (instance.maximum == 10).all()


def test_same_seed_same_instance():
    a = generate_instance(2, seed=13)
    b = generate_instance(2, seed=13)

    assert np.array_equal(a.bounds, b.bounds)
    assert np.array_equal(a.fixed_rent, b.fixed_rent)


def test_linked_sets_share_skeleton():
    linked = generate_linked(seed=5)
    first = linked[LINKED_SETS[0]]

    assert sorted(linked) == list(LINKED_SETS)
    for instance in linked.values():
        assert instance.areas == first.areas
        assert np.array_equal(instance.groups, first.groups)
        assert np.array_equal(instance.ideal, first.ideal)
        assert np.array_equal(instance.attractiveness, first.attractiveness)
        assert np.array_equal(instance.fixed_rent, first.fixed_rent)


def test_linked_tightness():
    linked = generate_linked(seed=7)

    assert 60 <= linked[4].minimum.sum() <= 80
    assert 95 <= linked[5].minimum.sum() <= 98
    assert (linked[5].maximum - linked[5].ideal <= 2).all()
    assert linked[6].size_caps == TIGHT_SIZE_CAPS
    assert linked[7].size_caps == TIGHT_SIZE_CAPS
    assert linked[4].size_caps.small == 100


def test_unknown_set():
    with pytest.raises(InfeasibleSpecError):
        generate_instance(8, seed=0)


def test_area_sizes_must_fit():
    with pytest.raises(InfeasibleSpecError):
        draw_area_sizes(200, 5, np.random.default_rng(0))


def test_micro_instance():
    instance = micro_mall_instance(3)

    assert instance.name == "mall_micro_3"
    assert instance.areas == (range(0, 4), range(4, 8))
    assert instance.n_types == 3
    assert (instance.minimum <= instance.ideal).all()
