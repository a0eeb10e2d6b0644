import numpy as np
import pytest

from src.core.errors import OperatorError
from src.operators.adaptive import (
    AdaptiveGenes,
    AdaptiveSpec,
    CrossoverTag,
    Inheritance,
    inherit_adaptive,
    init_adaptive,
    mutate_adaptive,
)


def genes(*weights, tag=None, rate=None) -> AdaptiveGenes:
    return AdaptiveGenes(decoder_weights=tuple(float(w) for w in weights), crossover_tag=tag, mutation_rate=rate)


def test_equal_ranks_average():
    child = inherit_adaptive([(genes(10), 1), (genes(20), 1)], Inheritance.RANK_WEIGHTED_AVERAGE, np.random.default_rng(0))

    assert child.decoder_weights == (15.0,)


def test_rank_weighted_average_arithmetic():
    w_a, w_b = 300.0, 1200.0

    child = inherit_adaptive([(genes(w_a), 100), (genes(w_b), 50)], "rank_weighted_average", np.random.default_rng(0))

    assert child.decoder_weights[0] == pytest.approx((100 * w_a + 50 * w_b) / 150)


def test_uniform_in_range_between_parents():
    rng = np.random.default_rng(1)
    for _ in range(500):
        child = inherit_adaptive([(genes(10, 50), 3), (genes(20, 40), 7)], Inheritance.UNIFORM_IN_RANGE, rng)
        assert 10 <= child.decoder_weights[0] <= 20
        assert 40 <= child.decoder_weights[1] <= 50


def test_take_random_parent_copies_one():
    rng = np.random.default_rng(2)
    seen = set()
    for _ in range(100):
        child = inherit_adaptive([(genes(1, 2), 1), (genes(3, 4), 2)], Inheritance.TAKE_RANDOM_PARENT, rng)
        seen.add(child.decoder_weights)
    assert seen == {(1.0, 2.0), (3.0, 4.0)}


def test_tag_from_higher_ranked_parent():
    parents = [(genes(1, tag=CrossoverTag.C1), 2), (genes(1, tag=CrossoverTag.PMX), 9)]

    child = inherit_adaptive(parents, Inheritance.RANK_WEIGHTED_AVERAGE, np.random.default_rng(0))

    assert child.crossover_tag is CrossoverTag.PMX


def test_mutation_rate_rank_weighted():
    parents = [(genes(1, rate=0.01), 3), (genes(1, rate=0.04), 1)]

    child = inherit_adaptive(parents, Inheritance.RANK_WEIGHTED_AVERAGE, np.random.default_rng(0))

    assert child.mutation_rate == pytest.approx((3 * 0.01 + 1 * 0.04) / 4)


def test_missing_genes_raise():
    with pytest.raises(OperatorError):
        inherit_adaptive([(genes(1), 1), (None, 2)], Inheritance.RANK_WEIGHTED_AVERAGE, np.random.default_rng(0))


def test_init_within_ranges():
    spec = AdaptiveSpec(n_weights=6, weight_range=(0.0, 100.0), adapt_crossover=True, adapt_mutation=True)
    rng = np.random.default_rng(3)
    for _ in range(200):
        g = init_adaptive(spec, rng)
        assert len(g.decoder_weights) == 6
        assert all(0.0 <= w <= 100.0 for w in g.decoder_weights)
        assert g.crossover_tag in spec.tags
        assert 0.0 <= g.mutation_rate <= 0.05


def test_fixed_weights_kept():
    spec = AdaptiveSpec(n_weights=3, adapt_weights=False, fixed_weights=(8.0, 2.0, 1.0), adapt_crossover=True)

    child = inherit_adaptive(
        [(init_adaptive(spec, np.random.default_rng(0)), 1), (init_adaptive(spec, np.random.default_rng(1)), 2)],
        Inheritance.UNIFORM_IN_RANGE, np.random.default_rng(2), spec,
    )

    assert child.decoder_weights == (8.0, 2.0, 1.0)


def test_fixed_weights_required():
    with pytest.raises(OperatorError):
        AdaptiveSpec(n_weights=3, adapt_weights=False)


def test_mutate_rate_one_redraws_everything_in_range():
    spec = AdaptiveSpec(n_weights=4, weight_range=(0.0, 10.0), adapt_crossover=True, adapt_mutation=True)
    start = genes(-1, -1, -1, -1, tag=CrossoverTag.C1, rate=1.0)

    mutated = mutate_adaptive(start, spec, 1.0, np.random.default_rng(5))

    assert all(0.0 <= w <= 10.0 for w in mutated.decoder_weights)
    assert 0.0 <= mutated.mutation_rate <= 0.05


def test_mutate_rate_zero_keeps_genes():
    spec = AdaptiveSpec(n_weights=2, adapt_crossover=True)
    start = genes(1, 2, tag=CrossoverTag.PUX66)

    assert mutate_adaptive(start, spec, 0.0, np.random.default_rng(0)) == start


def test_tag_operators():
    assert CrossoverTag.PUX66.operator == "pux"
    assert CrossoverTag.PUX66.p == pytest.approx(0.66)
    assert CrossoverTag.C1.operator == "c1"
