import numpy as np
import pytest

from src.core.errors import GaConfigurationError
from src.ga.engine import GeneticAlgorithm, run
from src.ga.population import Individual, Population
from src.nurse.evaluate import evaluate
from src.nurse.generator import micro_instance
from src.nurse.indirect import (
    DECODERS,
    DecoderWeights,
    DecodeStats,
    IndirectOptions,
    NurseIndirectProblem,
    OrderKind,
    apply_simple_bound,
    boundary_point,
    bounded_candidates,
    decode_combined,
    decode_cover_highest,
    decode_overall_contribution,
    make_search_order,
    make_search_orders,
)
from src.nurse.patterns import PatternKind
from src.operators.adaptive import AdaptiveGenes, CrossoverTag

from .builders import MONDAY_DAY, TUESDAY_NIGHT, empty_demand, exhaustive_optimum, small_config, two_nurse_instance


def short_instance():
    demand = empty_demand()
    demand[MONDAY_DAY] = (0, 0, 2)
    demand[TUESDAY_NIGHT] = (0, 0, 3)
    return two_nurse_instance(demand)


def decode(name, perm, instance, orders=None, best_cost=None, stats=None):
    orders = orders or list(instance.feasible)
    if name == "highest":
        return decode_cover_highest(perm, instance, orders, best_cost, stats)
    return DECODERS[name](perm, instance, DecoderWeights(), orders, best_cost, stats)


# ---------- 边界 ----------

def test_bounded_candidates():
    assert bounded_candidates([1, 2, 3], [5, 20, 30], 10) == ([1], False)
    assert bounded_candidates([1, 2, 3], [5, 20, 30], None) == ([1, 2, 3], False)
    assert bounded_candidates([1, 2, 3], [5, 20, 30], 1) == ([1, 2, 3], True)
    assert apply_simple_bound([1, 2, 3], [5, 20, 30], 20) == [1, 2]


def test_boundary_point():
    assert boundary_point([3, 7, 12, 20], 10) == 2
    assert boundary_point([3, 7, 12, 20], None) == 4
    assert boundary_point([3, 7, 12, 20], 50) == 4
    assert boundary_point([30, 40], 10) == 1


# ---------- 搜索顺序 ----------

class TestSearchOrder:
    """Per-nurse pattern scan orders."""

    @pytest.fixture
    def instance(self):
        return micro_instance(6, seed=4)

    @pytest.mark.parametrize("kind", list(OrderKind))
    def test_is_permutation_of_feasible_set(self, instance, kind):
        for i in range(len(instance)):
            order = make_search_order(kind, instance, i, np.random.default_rng(i))

            assert sorted(order) == sorted(instance.feasible[i])

    def test_lowday_keeps_index_order(self, instance):
        assert make_search_order(OrderKind.LOWDAY, instance, 0, np.random.default_rng(0)) == tuple(instance.feasible[0])

    def test_cheapest_sorted_by_cost(self, instance):
        order = make_search_order(OrderKind.CHEAPEST, instance, 1, np.random.default_rng(0))
        costs = [instance.cost(1, j) for j in order]

        assert costs == sorted(costs)

    def test_randcost_rotates_cheapest(self, instance):
        cheapest = make_search_order(OrderKind.CHEAPEST, instance, 2, np.random.default_rng(0))
        rotated = make_search_order(OrderKind.RANDCOST, instance, 2, np.random.default_rng(3))
        start = cheapest.index(rotated[0])

        assert rotated == cheapest[start:] + cheapest[:start]

    def test_rand_keeps_sides_together(self, instance):
        order = make_search_order(OrderKind.RAND, instance, 0, np.random.default_rng(1))
        kinds = [instance.pattern(j).kind for j in order]
        switches = sum(1 for a, b in zip(kinds, kinds[1:]) if a is not b)

        assert switches <= 1

    def test_orders_reproducible(self, instance):
        a = make_search_orders(OrderKind.BIASED, instance, np.random.default_rng(5))
        b = make_search_orders(OrderKind.BIASED, instance, np.random.default_rng(5))

        assert a == b


# ---------- 解码器 ----------

@pytest.mark.parametrize("name", list(DECODERS))
@pytest.mark.parametrize("perm", [(0, 1), (1, 0)])
def test_decoders_cover_the_shortage(name, perm):
    roster = decode(name, perm, short_instance())

    assert roster == (MONDAY_DAY, TUESDAY_NIGHT)


@pytest.mark.parametrize("name", list(DECODERS))
def test_decoders_deterministic_and_feasible_sets(name):
    instance = micro_instance(6, seed=8)
    orders = make_search_orders(OrderKind.CHEAPEST, instance, np.random.default_rng(0))
    perm = tuple(int(i) for i in np.random.default_rng(1).permutation(len(instance)))

    first = decode(name, perm, instance, orders)

    assert first == decode(name, perm, instance, orders)
    instance.check_roster(first)


def test_bound_falls_back_when_nothing_fits():
    stats = DecodeStats()

    roster = decode("combined", (0, 1), short_instance(), best_cost=5.0, stats=stats)

    assert roster == (MONDAY_DAY, TUESDAY_NIGHT)
    assert stats.bound_fallbacks == 2
    assert stats.decoded == 1


def test_scored_decoders_pick_the_short_day():
    demand = empty_demand()
    demand[MONDAY_DAY] = (0, 0, 3)
    instance = two_nurse_instance(demand)

    assert decode_overall_contribution((0, 1), instance, DecoderWeights(), list(instance.feasible))[0] == MONDAY_DAY
    assert decode_combined((0, 1), instance, DecoderWeights(), list(instance.feasible))[0] == MONDAY_DAY


def test_decoder_weights_validation():
    with pytest.raises(ValueError):
        DecoderWeights(cover=(1.0, 2.0))
    with pytest.raises(ValueError):
        DecoderWeights(preference=-1.0)


# ---------- 求解器 ----------

def test_unknown_decoder():
    with pytest.raises(GaConfigurationError):
        IndirectOptions(decoder="nearest")


def test_grade_sorted_seed():
    instance = micro_instance(8, seed=5)
    problem = NurseIndirectProblem(instance, IndirectOptions(grade_sorted_seed=True))

    perm = problem.grade_sorted(np.random.default_rng(0))
    grades = [instance.nurses[i].grade for i in perm]

    assert sorted(perm) == list(range(len(instance)))
    assert grades == sorted(grades)


@pytest.mark.parametrize("decoder", list(DECODERS))
def test_indirect_run(decoder):
    instance = micro_instance(4, seed=2)
    optimum = exhaustive_optimum(instance)
    problem = NurseIndirectProblem(instance, IndirectOptions(decoder=decoder))

    result = run(problem, small_config(crossover="pmx", mutation="swap"), 6)

    assert result.monotonicity_violations == 0
    assert result.size_violations == 0
    assert sorted(result.best_overall.genotype) == list(range(len(instance)))
    check = evaluate(result.best_overall.solution, instance, 0.0)
    assert check.objective == result.best_overall.objective
    if result.best_feasible is not None:
        assert result.best_feasible.objective >= optimum


def test_adaptive_weights_and_boundary_operators():
    instance = micro_instance(6, seed=11)
    options = IndirectOptions(adaptive=True, adaptive_crossover=True, boundary_operators=True, order=OrderKind.RANDCOST)

    result = run(NurseIndirectProblem(instance, options), small_config(crossover="c1", mutation="swap"), 9)

    assert result.size_violations == 0
    assert len(result.best_overall.aux.decoder_weights) == 3
    assert "bound_fallbacks" in result.diagnostics


def test_orders_fixed_for_the_run():
    instance = micro_instance(5, seed=1)
    problem = NurseIndirectProblem(instance, IndirectOptions(order=OrderKind.RAND))

    run(problem, small_config(crossover="pux", mutation="swap", max_generations=3), 2)
    orders = problem.orders

    assert orders is not None
    assert all(instance.pattern(orders[i][0]).kind in (PatternKind.DAY, PatternKind.NIGHT) for i in range(len(instance)))


def test_better_ranked_parent_picks_the_crossover(monkeypatch):
    import src.nurse.indirect.solver as indirect_solver

    instance = micro_instance(4, seed=2)
    problem = NurseIndirectProblem(instance, IndirectOptions(adaptive_crossover=True))
    ga = GeneticAlgorithm(problem, small_config(crossover="pux", mutation="swap"), 0)
    worse = Individual(genotype=(0, 1, 2, 3), fitness=9.0, aux=AdaptiveGenes((1.0, 1.0, 1.0), CrossoverTag.C1))
    best = Individual(genotype=(3, 2, 1, 0), fitness=1.0, aux=AdaptiveGenes((1.0, 1.0, 1.0), CrossoverTag.PMX))
    population = Population(members=[worse, best], capacity=2)
    used = []

    def record(operator, g1, g2, rng, p=None, boundary=None):
        used.append(operator)
        return g1, g2

    monkeypatch.setattr(indirect_solver, "rank_select", lambda pop, n, rng: [worse, best])
    monkeypatch.setattr(indirect_solver, "crossover_permutations", record)

    children = problem.breed(population, 2, ga)

    assert used == ["pmx"]
    assert len(children) == 2
