import pytest

from src.core.errors import AggregationError
from src.harness.aggregate import CENSORED, aggregate, aggregate_by_set, best_per_instance
from src.harness.records import RunRecord


def record(instance: str, objective: float | None, run: int = 0, algorithm: str = "direct", instance_set: str = "a", seconds: float = 1.0) -> RunRecord:
    return RunRecord(
        algorithm=algorithm,
        instance_set=instance_set,
        instance=instance,
        run=run,
        seed=str(run),
        best_objective=objective,
        best_fitness=objective if objective is not None else 500.0,
        feasible=objective is not None,
        generations=10,
        seconds=seconds,
        monotonicity_violations=0,
        size_violations=0,
    )


# ---------- 删失平均 ----------

def test_censored_cost_divides_by_solved_instances():
    # 50 instances solved at cost 20, two never solved
    records = [record(f"i{k}", 20.0) for k in range(50)] + [record("x1", None), record("x2", None)]

    stats = aggregate(records, "nurse")

    assert stats.cost_or_rent == pytest.approx(24.0)
    assert stats.uncensored_mean == pytest.approx(20.0)
    assert stats.n_instances == 52
    assert stats.n_solved == 50
    assert stats.feasibility == pytest.approx(50 / 52)


def test_mall_censors_with_zero():
    records = [record("m1", 2000.0), record("m2", 1000.0), record("m3", None)]

    stats = aggregate(records, "mall")

    assert CENSORED["mall"] == 0.0
    assert stats.cost_or_rent == pytest.approx(1500.0)


def test_nothing_solved():
    stats = aggregate([record("x", None), record("x", None, run=1)], "nurse")

    assert stats.cost_or_rent == 100.0
    assert stats.uncensored_mean is None
    assert stats.feasibility == 0.0


# ---------- 每个实例的最优 ----------

def test_best_per_instance_direction():
    records = [record("a", 30.0), record("a", 25.0, run=1), record("a", None, run=2), record("b", None)]

    assert best_per_instance(records, "nurse") == {"a": 25.0, "b": None}
    assert best_per_instance(records, "mall") == {"a": 30.0, "b": None}


def test_feasibility_counts_runs():
    records = [record("a", 10.0), record("a", None, run=1), record("a", None, run=2), record("a", 12.0, run=3)]

    stats = aggregate(records, "nurse")

    assert stats.feasibility == 0.5
    assert stats.runs == 4
    assert stats.cost_or_rent == 10.0


def test_aggregate_by_set_keeps_first_seen_order():
    records = [
        record("a", 10.0, instance_set="s2"),
        record("b", 20.0, instance_set="s1"),
        record("a", 11.0, algorithm="indirect", instance_set="s2"),
    ]

    stats = aggregate_by_set(records, "nurse")

    assert list(stats) == [("direct", "s2"), ("direct", "s1"), ("indirect", "s2")]
    assert stats[("indirect", "s2")].cost_or_rent == 11.0


def test_aggregate_errors():
    with pytest.raises(AggregationError):
        aggregate([], "nurse")
    with pytest.raises(AggregationError):
        aggregate([record("a", 1.0)], "timetable")
