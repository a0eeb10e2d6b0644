import numpy as np
import pytest

from src.core.errors import GaConfigurationError, OperatorError
from src.operators.mutation import (
    mutate_permutation,
    scramble_mutation,
    scramble_segment,
    single_gene_mutation,
    swap_mutation,
    swap_positions,
)


def test_single_gene_rate_zero_unchanged():
    s = (0, 1, 2, 3)
    domains = [range(5)] * 4

    assert single_gene_mutation(s, 0.0, domains, np.random.default_rng(0)) == s


def test_single_gene_singleton_domains():
    s = (2, 0, 1)
    domains = [(2,), (0,), (1,)]

    assert single_gene_mutation(s, 1.0, domains, np.random.default_rng(0)) == s


def test_single_gene_stays_in_domain():
    rng = np.random.default_rng(1)
    domains = [(0, 3, 7)] * 30
    for _ in range(200):
        child = single_gene_mutation((0,) * 30, 0.5, domains, rng)
        assert set(child) <= {0, 3, 7}


def test_single_gene_expected_count():
    rng = np.random.default_rng(123)
    domains = [(0, 1)] * 25
    # flipping to 1 happens at rate / 2 per gene
    trials = 20_000
    changed = sum(sum(single_gene_mutation((0,) * 25, 0.015, domains, rng)) for _ in range(trials))
    expected = trials * 25 * 0.015 / 2

    assert abs(changed - expected) / expected < 0.1


def test_single_gene_empty_domain():
    with pytest.raises(OperatorError):
        single_gene_mutation((0, 0), 1.0, [(0,), ()], np.random.default_rng(0))


def test_swap_positions_example():
    assert swap_positions((1, 2, 3, 4, 5), 1, 4) == (1, 5, 3, 4, 2)


def test_swap_rate_zero():
    assert swap_mutation((3, 1, 2), 0.0, np.random.default_rng(0)) == (3, 1, 2)


def test_swap_and_scramble_keep_multiset():
    rng = np.random.default_rng(8)
    s = tuple(range(12))
    for _ in range(5000):
        assert sorted(swap_mutation(s, 0.2, rng)) == list(s)
        assert sorted(scramble_mutation(s, 0.5, rng)) == list(s)


def test_swap_boundary_single_tail_position():
    rng = np.random.default_rng(4)
    s = tuple(range(10))
    for _ in range(500):
        child = swap_mutation(s, 0.1, rng, boundary=3)
        assert sorted(child) == list(s)
        # the tail never swaps within itself, so a lone moved tail value came from the prefix
        tail_moved = [i for i in range(3, 10) if child[i] != s[i]]
        if len(tail_moved) == 1:
            assert child[tail_moved[0]] < 3 or any(child[i] != s[i] for i in range(3))


def test_scramble_segment_of_one():
    assert scramble_segment((1, 2, 3), 1, 2, np.random.default_rng(0)) == (1, 2, 3)


def test_mutation_rate_checked():
    with pytest.raises(GaConfigurationError):
        swap_mutation((1, 2), 1.5, np.random.default_rng(0))


def test_unknown_permutation_mutation():
    with pytest.raises(GaConfigurationError):
        mutate_permutation("invert", (1, 2), 0.1, np.random.default_rng(0))
