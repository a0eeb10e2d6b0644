import numpy as np
import pytest

from src.core.errors import InstanceValidationError, RosterError
from src.nurse.models import NurseHistory, NurseInstance, NurseSpec, PreferenceClass, candidate_patterns, validate_demand
from src.nurse.patterns import PatternKind

from .builders import MONDAY_DAY, TUESDAY_NIGHT, empty_demand, two_nurse_instance


class TestCandidatePatterns:
    """Feasible pattern sets per nurse."""

    def test_standard_contract(self):
        nurse = NurseSpec(id=1, grade=2, days=5, nights=4)

        assert len(candidate_patterns(nurse)) == 21 + 35

    def test_days_only_drops_nights(self):
        nurse = NurseSpec(id=1, grade=2, days=5, nights=4, preference=PreferenceClass.DAYS_ONLY)
        patterns = candidate_patterns(nurse)

        assert len(patterns) == 21
        assert all(x.kind is PatternKind.DAY for x in patterns)

    def test_nights_only_drops_days(self):
        nurse = NurseSpec(id=1, grade=2, days=5, nights=4, preference=PreferenceClass.NIGHTS_ONLY)

        assert len(candidate_patterns(nurse)) == 35


class TestNurseHistory:

    def test_new_nurse(self):
        history = NurseHistory()

        assert history.worked_last_week == (0,) * 7
        assert not history.nights_last_week
        assert not history.weekend_last_week

    def test_weekend_and_nights(self):
        history = NurseHistory(last_pattern=(1, 0, 0, 0, 0, 0, 0) + (0, 0, 0, 0, 0, 0, 1))

        assert history.nights_last_week
        assert history.weekend_last_week


class TestBuild:
    """Instance construction and validation."""

    def test_sorted_by_grade(self):
        nurses = [
            NurseSpec(id=1, grade=3, days=1, nights=0, preference=PreferenceClass.DAYS_ONLY),
            NurseSpec(id=2, grade=1, days=1, nights=0, preference=PreferenceClass.DAYS_ONLY),
            NurseSpec(id=3, grade=2, days=1, nights=0, preference=PreferenceClass.DAYS_ONLY),
        ]
        instance = NurseInstance.build(nurses, empty_demand())

        assert [n.grade for n in instance.nurses] == [1, 2, 3]
        assert instance.grade_segment(2) == range(1, 2)
        assert instance.grade_segment(3) == range(2, 3)

    def test_costs_override_and_unused_cells(self):
        instance = two_nurse_instance()

        assert instance.cost(0, MONDAY_DAY) == 10
        assert instance.cost(1, TUESDAY_NIGHT) == 12
        assert instance.cost(0, TUESDAY_NIGHT) == -1

    def test_grade_indicators(self):
        instance = two_nurse_instance()

        assert instance.grade_at_most.tolist() == [[1, 1, 1], [0, 0, 1]]
        assert instance.exact_grade.tolist() == [[1, 0, 0], [0, 0, 1]]

    def test_duplicate_ids(self):
        nurses = [NurseSpec(id=1, grade=1, days=1, nights=0)] * 2

        with pytest.raises(InstanceValidationError) as e:
            NurseInstance.build(nurses, empty_demand())
        assert "nurse ids are not unique" in e.value.problems

    def test_bad_grade(self):
        with pytest.raises(InstanceValidationError):
            NurseInstance.build([NurseSpec(id=1, grade=4, days=1, nights=0)], empty_demand())

    def test_bad_request_grade(self):
        requests = (6,) + (0,) * 13

        with pytest.raises(InstanceValidationError):
            NurseInstance.build([NurseSpec(id=1, grade=1, days=1, nights=0, requests=requests)], empty_demand())

    def test_decreasing_demand(self):
        demand = empty_demand()
        demand[0] = (2, 1, 3)

        with pytest.raises(InstanceValidationError):
            two_nurse_instance(demand)

    def test_demand_shape(self):
        assert validate_demand(np.zeros((13, 3), dtype=np.int64))

    def test_cost_row_length(self):
        nurses = [NurseSpec(id=1, grade=1, days=1, nights=0)]

        with pytest.raises(InstanceValidationError):
            NurseInstance.build(nurses, empty_demand(), costs={1: [0, 0]})

    def test_cost_above_cap(self):
        nurses = [NurseSpec(id=1, grade=1, days=7, nights=0)]

        with pytest.raises(InstanceValidationError):
            NurseInstance.build(nurses, empty_demand(), costs={1: [101]})

    def test_nurse_works_nothing(self):
        nurse = NurseSpec(id=1, grade=1, days=0, nights=3, preference=PreferenceClass.DAYS_ONLY)

        with pytest.raises(InstanceValidationError):
            NurseInstance.build([nurse], empty_demand())


def test_check_roster_outside_feasible_set():
    instance = two_nurse_instance()

    instance.check_roster((MONDAY_DAY, TUESDAY_NIGHT))
    with pytest.raises(RosterError):
        instance.check_roster((TUESDAY_NIGHT, TUESDAY_NIGHT))


def test_check_roster_length():
    with pytest.raises(InstanceValidationError):
        two_nurse_instance().check_roster((MONDAY_DAY,))
