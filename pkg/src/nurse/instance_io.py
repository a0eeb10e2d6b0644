import json
import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field

from .models import NO_REQUEST, NurseHistory, NurseInstance, NurseKind, NurseSpec, PreferenceClass
from .patterns import N_SHIFTS

logger = logging.getLogger(__name__)

PreferenceName = Literal[
    "days_only", "nights_only", "days_important", "nights_important",
    "days_preferred", "nights_preferred", "neutral",
]


class HistoryRecord(BaseModel):
    last_pattern: list[int] | None = None # 上周 14 个班次
    nights_week_before: bool = False
    last_week_cost: int = 0


class NurseRecord(BaseModel):
    id: int
    grade: Literal[1, 2, 3]
    days: int
    nights: int
    combined: int | None = None # 日夜混合合同的总班次
    preference_class: PreferenceName = "neutral"
    requests: list[int] = Field(default_factory=lambda: [NO_REQUEST] * N_SHIFTS) # 每个班次的请求等级, 0 = 无
    history: HistoryRecord = Field(default_factory=HistoryRecord)
    is_head: bool = False
    team: int | None = None
    kind: Literal["regular", "weekday_dummy", "weekend_dummy", "bank"] = "regular"


class NurseInstanceFile(BaseModel):
    name: str
    nurses: list[NurseRecord]
    demand: list[list[int]] # 14 x 3, 按等级累计
    pij: dict[int, list[int]] | None = None # nurse id -> 按可行模式顺序的成本, 覆盖内置规则


class NurseAssignment(BaseModel):
    nurse: int
    pattern: str # "1111100|0000000"
    cost: int


class NurseSolutionFile(BaseModel):
    instance: str
    assignment: list[NurseAssignment]
    objective: float
    violation: int
    fitness: float
    feasible: bool


def record_to_spec(record: NurseRecord) -> NurseSpec:
    history = record.history
    return NurseSpec(
        id=record.id,
        grade=record.grade,
        days=record.days,
        nights=record.nights,
        combined=record.combined,
        preference=PreferenceClass(record.preference_class),
        requests=tuple(record.requests),
        history=NurseHistory(
            last_pattern=tuple(history.last_pattern) if history.last_pattern is not None else None,
            nights_week_before=history.nights_week_before,
            last_week_cost=history.last_week_cost,
        ),
        is_head=record.is_head,
        team=record.team,
        kind=NurseKind(record.kind),
    )


def spec_to_record(nurse: NurseSpec) -> NurseRecord:
    history = nurse.history
    return NurseRecord(
        id=nurse.id,
        grade=nurse.grade,
        days=nurse.days,
        nights=nurse.nights,
        combined=nurse.combined,
        preference_class=nurse.preference.value,
        requests=list(nurse.requests),
        history=HistoryRecord(
            last_pattern=list(history.last_pattern) if history.last_pattern is not None else None,
            nights_week_before=history.nights_week_before,
            last_week_cost=history.last_week_cost,
        ),
        is_head=nurse.is_head,
        team=nurse.team,
        kind=nurse.kind.value,
    )


def to_instance(data: NurseInstanceFile) -> NurseInstance:
    """
    Raises:
        InstanceValidationError: the data breaks an instance invariant
    """
    return NurseInstance.build(
        [record_to_spec(r) for r in data.nurses],
        data.demand,
        costs=data.pij,
        name=data.name,
    )


def from_instance(instance: NurseInstance) -> NurseInstanceFile:
    """Serialize with the effective costs so a reload reproduces the instance exactly."""
    pij = {
        nurse.id: [instance.cost(i, j) for j in instance.feasible[i]]
        for i, nurse in enumerate(instance.nurses)
    }
    return NurseInstanceFile(
        name=instance.name,
        nurses=[spec_to_record(n) for n in instance.nurses],
        demand=instance.demand.tolist(),
        pij=pij,
    )


def read_nurse_file(path: str | Path) -> NurseInstanceFile:
    """
    Raises:
        pydantic.ValidationError: the file does not match the schema
    """
    with open(path, encoding="utf-8") as f:
        return NurseInstanceFile.model_validate(json.load(f))


def load_nurse_instance(path: str | Path) -> NurseInstance:
    instance = to_instance(read_nurse_file(path))
    logger.info(f"loaded nurse instance {instance.name} from {path}")
    return instance


def save_nurse_instance(instance: NurseInstance, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(from_instance(instance).model_dump(mode="json"), f, indent=2)
    return path


def save_nurse_solution(solution: NurseSolutionFile, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(solution.model_dump(mode="json"), f, indent=2)
    return path


def solution_file(instance: NurseInstance, roster, objective: float, violation: int, fitness: float) -> NurseSolutionFile:
    return NurseSolutionFile(
        instance=instance.name,
        assignment=[
            NurseAssignment(nurse=nurse.id, pattern=instance.pattern(j).label, cost=instance.cost(i, j))
            for i, (nurse, j) in enumerate(zip(instance.nurses, roster))
        ],
        objective=objective,
        violation=violation,
        fitness=fitness,
        feasible=violation == 0,
    )
