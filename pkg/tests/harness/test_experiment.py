import dataclasses
import json
from pathlib import Path

import pytest

from src.core.config.load_config import parse_config
from src.core.errors import InstanceValidationError
from src.ga.tracking import SolutionRecord
from src.harness.experiment import (
    InstanceHandle,
    _better,
    generate_instances,
    load_instances,
    make_tasks,
    run_experiment,
)
from src.harness.outputs import CONVERGENCE_CSV, RUNS_CSV, SUMMARY_CSV, emit_outputs, save_best_solutions
from src.harness.records import ConvergenceRow, RunRecord, SummaryRow
from src.mall.generator import generate_instance
from src.mall.instance_io import save_mall_instance
from src.nurse.generator import micro_instance
from src.utils.CsvHandler import CsvHandler

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "mall_five_areas.json"


def make_config(tmp_path, problem="nurse", algorithm="direct", convergence=True, **experiment):
    row = {
        "experiment": {"problem": problem, "algorithm": algorithm, "runs_per_instance": 2, "base_seed": 7, **experiment},
        "ga": {"population_size": 12, "max_generations": 5, "stop_stagnation": 5},
        "output": {"out_dir": str(tmp_path / "results"), "convergence": convergence, "save_best": str(tmp_path / "best")},
    }
    return parse_config(row)


@pytest.fixture
def nurse_handles():
    return [
        InstanceHandle("micro-1", "micro", micro_instance(4, seed=1)),
        InstanceHandle("micro-2", "micro", micro_instance(4, seed=2)),
    ]


def without_time(records):
    return [dataclasses.replace(r, seconds=0.0) for r in records]


# ---------- 实例 ----------

def test_generate_mall_instances_use_consecutive_seeds():
    handles = generate_instances("mall", {"set": 1, "count": 2, "seed": 3})

    assert [h.name for h in handles] == ["mall_set1_3", "mall_set1_4"]
    assert {h.instance_set for h in handles} == {"set1"}


def test_generate_linked_quadruples():
    handles = generate_instances("mall", {"linked": True, "count": 1, "seed": 2})

    assert [h.instance_set for h in handles] == ["set4", "set5", "set6", "set7"]


def test_generate_nurse_instances():
    handles = generate_instances("nurse", {"variant": "random", "count": 2, "seed": 1, "n_nurses": 10})

    assert [h.name for h in handles] == ["nurse-random-1", "nurse-random-2"]
    assert handles[0].instance_set == "nurse-random"


def test_load_instances_from_directory_and_generator(tmp_path):
    directory = tmp_path / "set2"
    save_mall_instance(generate_instance(2, seed=1), directory / "b.json")
    save_mall_instance(generate_instance(2, seed=2), directory / "a.json")
    config = make_config(tmp_path, "mall", "direct", instances=[str(directory), str(FIXTURE)], generate={"set": 1, "count": 1})

    handles = load_instances(config)

    assert [h.name for h in handles] == ["mall_set2_2", "mall_set2_1", "five-areas", "mall_set1_0"]
    assert [h.instance_set for h in handles[:3]] == ["set2", "set2", "fixtures"]


def test_load_instances_needs_something(tmp_path):
    with pytest.raises(InstanceValidationError):
        load_instances(make_config(tmp_path))


def test_seeds_depend_on_instance_and_run(tmp_path, nurse_handles):
    tasks = make_tasks(nurse_handles, make_config(tmp_path))
    indirect = make_tasks(nurse_handles, make_config(tmp_path, algorithm="indirect"))

    assert len({t.seed for t in tasks}) == 4
    assert [t.seed for t in tasks] == [t.seed for t in indirect]


# ---------- 运行 ----------

def test_run_experiment_is_reproducible(tmp_path, nurse_handles):
    config = make_config(tmp_path)

    first = run_experiment(config, handles=nurse_handles)
    second = run_experiment(config, handles=nurse_handles)

    assert without_time(first.records) == without_time(second.records)
    assert [(r.instance, r.run) for r in first.records] == [("micro-1", 0), ("micro-1", 1), ("micro-2", 0), ("micro-2", 1)]
    assert all(r.monotonicity_violations == 0 and r.size_violations == 0 for r in first.records)
    assert set(first.stats) == {("direct", "micro")}
    assert first.convergence


@pytest.mark.parametrize("algorithm", ["indirect", "coevo-repair"])
def test_run_mall_experiment(tmp_path, algorithm):
    config = make_config(tmp_path, "mall", algorithm)
    handle = InstanceHandle("five-areas", "fixtures", generate_instance(1, seed=5))

    result = run_experiment(config, handles=[handle])

    assert len(result.records) == 2
    assert list(result.best) == ["five-areas"]


def test_better_prefers_feasible_then_objective():
    def rec(objective, feasible, fitness=0.0):
        return SolutionRecord(genotype=(0,), solution=(0,), objective=objective, violation=0.0, fitness=fitness, feasible=feasible)

    assert _better("nurse", None, rec(5, False))
    assert _better("nurse", rec(5, False), rec(90, True))
    assert _better("nurse", rec(50, True), rec(40, True))
    assert not _better("mall", rec(50, True), rec(40, True))
    assert not _better("nurse", rec(1, True), rec(0, False))


# ---------- 输出 ----------

def test_emit_outputs_parse_back(tmp_path, nurse_handles):
    config = make_config(tmp_path)
    result = run_experiment(config, handles=nurse_handles)

    written = emit_outputs(result, config)

    assert [p.name for p in written] == [SUMMARY_CSV, RUNS_CSV, CONVERGENCE_CSV]
    runs = CsvHandler.read_records(written[1], RunRecord)
    assert [(r.instance, r.run, r.seed, r.feasible, r.generations) for r in runs] == [
        (r.instance, r.run, r.seed, r.feasible, r.generations) for r in result.records
    ]
    assert [r.best_fitness for r in runs] == pytest.approx([r.best_fitness for r in result.records])
    summary = CsvHandler.read_records(written[0], SummaryRow)
    assert summary[0].runs == 4
    convergence = CsvHandler.read_records(written[2], ConvergenceRow)
    assert len(convergence) == len(result.convergence)


def test_emit_outputs_appends(tmp_path, nurse_handles):
    config = make_config(tmp_path)
    result = run_experiment(config, handles=nurse_handles)

    emit_outputs(result, config)
    emit_outputs(result, config)

    assert len(CsvHandler.read_records(tmp_path / "results" / RUNS_CSV, RunRecord)) == 8


def test_convergence_file_only_on_request(tmp_path, nurse_handles):
    config = make_config(tmp_path, convergence=False)
    result = run_experiment(config, handles=nurse_handles)

    written = emit_outputs(result, config)

    assert result.convergence == []
    assert CONVERGENCE_CSV not in [p.name for p in written]


def test_save_best_solutions(tmp_path, nurse_handles):
    config = make_config(tmp_path)
    result = run_experiment(config, handles=nurse_handles)

    paths = save_best_solutions(result, config)

    assert sorted(p.name for p in paths) == ["micro-1.solution.json", "micro-2.solution.json"]
    data = json.loads(paths[0].read_text(encoding="utf-8"))
    assert len(data["assignment"]) == 4


def test_save_best_mall_solution(tmp_path):
    config = make_config(tmp_path, "mall", "direct")
    handle = InstanceHandle("set1", "set1", generate_instance(1, seed=2))
    result = run_experiment(config, handles=[handle])

    (path,) = save_best_solutions(result, config)

    data = json.loads(path.read_text(encoding="utf-8"))
    assert len(data["assignment"]) == 20
    assert min(data["assignment"]) >= 1
