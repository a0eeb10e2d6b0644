"""
JSON files for mall instances and solutions.

Files number locations, areas and shop types from 1, the way the data
tables are usually printed; the in-memory model is 0-based.
"""
import json
import logging
from pathlib import Path
from typing import Sequence

from pydantic import BaseModel, Field

from ..core.errors import InstanceValidationError
from .evaluate import LayoutEvaluation
from .models import GROUP_BONUS, MallInstance, SizeCaps

logger = logging.getLogger(__name__)


class AreaRecord(BaseModel):
    first: int # 首个位置, 从 1 开始
    last: int # 末个位置 (含)
    attractiveness: float


class ShopTypeRecord(BaseModel):
    min: int
    ideal: int
    max: int
    groups: list[int] = Field(default_factory=list) # 所属组号, 从 1 开始
    fixed_rent: list[float] # 每个区域一项


class SizeCapsRecord(BaseModel):
    small: int
    medium: int
    large: int


class MallInstanceFile(BaseModel):
    name: str
    n_locations: int
    n_groups: int
    areas: list[AreaRecord]
    shop_types: list[ShopTypeRecord]
    size_max: SizeCapsRecord
    efficiency: list[float] | None = None # 规模效率覆盖表, 下标为位置数
    group_bonus: list[float] = Field(default_factory=lambda: list(GROUP_BONUS))


class MallSolutionFile(BaseModel):
    instance: str
    assignment: list[int] # 每个位置的商店类型, 从 1 开始
    totals: list[int] # 每个类型的商店数
    shops_by_size: SizeCapsRecord
    rent: float
    violation: int
    fitness: float
    feasible: bool


def to_instance(data: MallInstanceFile) -> MallInstance:
    """
    Raises:
        InstanceValidationError: the data breaks an instance invariant, e.g.
            areas that do not tile the locations
    """
    problems = []
    expected = 1
    for k, area in enumerate(data.areas):
        if area.first != expected or area.last < area.first:
            problems.append(f"area {k + 1} spans {area.first}-{area.last}, expected to start at {expected}")
        expected = area.last + 1
    if expected - 1 != data.n_locations:
        problems.append(f"areas cover {expected - 1} locations, file declares {data.n_locations}")
    for j, shop in enumerate(data.shop_types):
        if len(shop.fixed_rent) != len(data.areas):
            problems.append(f"shop type {j + 1}: {len(shop.fixed_rent)} fixed rents for {len(data.areas)} areas")
        if any(not 1 <= g <= data.n_groups for g in shop.groups):
            problems.append(f"shop type {j + 1}: group numbers outside 1..{data.n_groups}")
    if problems:
        raise InstanceValidationError(data.name, problems)

    groups = [[1 if g + 1 in shop.groups else 0 for g in range(data.n_groups)] for shop in data.shop_types]
    return MallInstance.build(
        [area.last - area.first + 1 for area in data.areas],
        groups,
        [[shop.min, shop.ideal, shop.max] for shop in data.shop_types],
        SizeCaps(data.size_max.small, data.size_max.medium, data.size_max.large),
        [area.attractiveness for area in data.areas],
        [shop.fixed_rent for shop in data.shop_types],
        name=data.name,
        efficiency=data.efficiency,
        group_bonus=data.group_bonus,
    )


def from_instance(instance: MallInstance) -> MallInstanceFile:
    return MallInstanceFile(
        name=instance.name,
        n_locations=instance.n_locations,
        n_groups=instance.n_groups,
        areas=[
            AreaRecord(first=area.start + 1, last=area.stop, attractiveness=float(instance.attractiveness[k]))
            for k, area in enumerate(instance.areas)
        ],
        shop_types=[
            ShopTypeRecord(
                min=int(low), ideal=int(ideal), max=int(high),
                groups=[int(g) + 1 for g in range(instance.n_groups) if instance.groups[j, g]],
                fixed_rent=[float(r) for r in instance.fixed_rent[j]],
            )
            for j, (low, ideal, high) in enumerate(instance.bounds)
        ],
        size_max=SizeCapsRecord(**instance.size_caps.__dict__),
        efficiency=list(instance.efficiency) if instance.efficiency is not None else None,
        group_bonus=list(instance.group_bonus),
    )


def read_mall_file(path: str | Path) -> MallInstanceFile:
    """
    Raises:
        pydantic.ValidationError: the file does not match the schema
    """
    with open(path, encoding="utf-8") as f:
        return MallInstanceFile.model_validate(json.load(f))


def load_mall_instance(path: str | Path) -> MallInstance:
    instance = to_instance(read_mall_file(path))
    logger.info(f"loaded mall instance {instance.name} from {path}")
    return instance


def _dump(model: BaseModel, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model.model_dump(mode="json"), f, indent=2)
    return path


def save_mall_instance(instance: MallInstance, path: str | Path) -> Path:
    return _dump(from_instance(instance), path)


def save_mall_solution(solution: MallSolutionFile, path: str | Path) -> Path:
    return _dump(solution, path)


def solution_file(instance: MallInstance, layout: Sequence[int], result: LayoutEvaluation) -> MallSolutionFile:
    small, medium, large = result.stats.shops_by_size
    return MallSolutionFile(
        instance=instance.name,
        assignment=[int(j) + 1 for j in layout],
        totals=[int(t) for t in result.stats.totals],
        shops_by_size=SizeCapsRecord(small=small, medium=medium, large=large),
        rent=result.rent,
        violation=result.violation,
        fitness=result.fitness,
        feasible=result.feasible,
    )
