import json

import numpy as np
import pytest
from pydantic import ValidationError

from src.nurse.generator import NurseGenSpec, generate_nurse_instance
from src.nurse.instance_io import (
    from_instance,
    load_nurse_instance,
    read_nurse_file,
    save_nurse_instance,
    save_nurse_solution,
    solution_file,
    to_instance,
)

from .builders import MONDAY_DAY, TUESDAY_NIGHT, two_nurse_instance


@pytest.fixture
def instance():
    return generate_nurse_instance(NurseGenSpec(n_nurses=20, head_nurses=1, teams=2), seed=4)


def test_save_and_load(instance, tmp_path):
    path = save_nurse_instance(instance, tmp_path / "ward" / "a.json")
    loaded = load_nurse_instance(path)

    assert loaded.name == instance.name
    assert loaded.nurses == instance.nurses
    assert np.array_equal(loaded.demand, instance.demand)
    assert np.array_equal(loaded.cost_matrix, instance.cost_matrix)


def test_file_model_is_stable(instance, tmp_path):
    data = from_instance(instance)

    assert from_instance(to_instance(data)) == data


def test_costs_keyed_by_nurse_id(instance, tmp_path):
    path = save_nurse_instance(instance, tmp_path / "a.json")
    raw = json.loads(path.read_text(encoding="utf-8"))

    assert set(raw["pij"]) == {str(n.id) for n in instance.nurses}
    assert len(raw["demand"]) == 14


def test_schema_rejects_bad_grade(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "name": "bad",
        "nurses": [{"id": 1, "grade": 4, "days": 5, "nights": 4}],
        "demand": [[0, 0, 0]] * 14,
    }), encoding="utf-8")

    with pytest.raises(ValidationError):
        read_nurse_file(path)


def test_solution_file(tmp_path):
    instance = two_nurse_instance()
    solution = solution_file(instance, (MONDAY_DAY, TUESDAY_NIGHT), 22.0, 0, 22.0)

    assert solution.feasible
    assert [a.pattern for a in solution.assignment] == ["0100000|0000000", "0000000|0010000"]
    assert [a.cost for a in solution.assignment] == [10, 12]

    path = save_nurse_solution(solution, tmp_path / "out" / "s.json")
    assert json.loads(path.read_text(encoding="utf-8"))["objective"] == 22.0
