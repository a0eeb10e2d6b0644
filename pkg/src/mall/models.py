import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Sequence

import numpy as np

from ..core.errors import InstanceValidationError

logger = logging.getLogger(__name__)

MAX_GROUP_SIZE = 10
MIN_GROUP_SIZE = 3
# rent multiplier when a shop's type belongs to 0, 1 or 2 complete groups in its area
GROUP_BONUS = (10.0, 12.0, 14.4)

# a genotype / solution: one 0-based shop type per location, locations in area order
Layout = tuple[int, ...]


class ShopSize(str, Enum):
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"


@dataclass(frozen=True)
class SizeCaps:
    """Most shops of each size the mall may hold."""
    small: int
    medium: int
    large: int

    def as_tuple(self) -> tuple[int, int, int]:
        return self.small, self.medium, self.large


@dataclass(frozen=True, eq=False)
class MallInstance:
    """
    An immutable mall tenant-selection instance.

    Locations are numbered area by area, so every area is one contiguous
    range of the layout string. Shop types and groups are 0-based.

    Attributes:
        areas: location range of each area
        groups: (S, G) 0/1 membership of shop type j in group l
        bounds: (S, 3) minimum, ideal and maximum count per shop type
        size_caps: most small, medium and large shops allowed
        attractiveness: (A,) attraction factor per area
        fixed_rent: (S, A) rent added per location of type j in area k
        efficiency: optional size efficiency by location count, overriding the computed values it covers
        group_bonus: rent factor for 0, 1 and 2 complete groups
    """
    name: str
    areas: tuple[range, ...]
    groups: np.ndarray
    bounds: np.ndarray
    size_caps: SizeCaps
    attractiveness: np.ndarray
    fixed_rent: np.ndarray
    efficiency: tuple[float, ...] | None = None
    group_bonus: tuple[float, float, float] = GROUP_BONUS

    @classmethod
    def build(
        cls,
        area_sizes: Sequence[int],
        groups: Sequence[Sequence[int]] | np.ndarray,
        bounds: Sequence[Sequence[int]] | np.ndarray,
        size_caps: SizeCaps | Sequence[int],
        attractiveness: Sequence[float],
        fixed_rent: Sequence[Sequence[float]] | np.ndarray,
        name: str = "mall",
        efficiency: Sequence[float] | None = None,
        group_bonus: Sequence[float] = GROUP_BONUS,
    ) -> "MallInstance":
        """
        Raises:
            InstanceValidationError: any invariant broken
        """
        areas = []
        start = 0
        for size in area_sizes:
            areas.append(range(start, start + int(size)))
            start += int(size)
        caps = size_caps if isinstance(size_caps, SizeCaps) else SizeCaps(*(int(c) for c in size_caps))
        instance = cls(
            name=name,
            areas=tuple(areas),
            groups=np.asarray(groups, dtype=np.int64).reshape(len(bounds), -1),
            bounds=np.asarray(bounds, dtype=np.int64),
            size_caps=caps,
            attractiveness=np.asarray(attractiveness, dtype=float),
            fixed_rent=np.asarray(fixed_rent, dtype=float),
            efficiency=tuple(float(e) for e in efficiency) if efficiency is not None else None,
            group_bonus=tuple(float(b) for b in group_bonus),
        )
        instance.validate()
        logger.debug(
            f"instance {name}: {instance.n_locations} locations, {instance.n_areas} areas, "
            f"{instance.n_types} shop types, {instance.n_groups} groups"
        )
        return instance

    def problems(self) -> list[str]:
        found = []
        s, a = self.n_types, self.n_areas
        if a == 0:
            return ["no areas"]
        if any(len(area) == 0 for area in self.areas):
            found.append("every area needs at least one location")
        if self.bounds.shape != (s, 3):
            return found + [f"bounds must be {s}x3, got {self.bounds.shape}"]
        if self.fixed_rent.shape != (s, a):
            found.append(f"fixed rent must be {s}x{a}, got {self.fixed_rent.shape}")
        if self.attractiveness.shape != (a,):
            found.append(f"expected {a} attractiveness factors, got {self.attractiveness.shape}")
        if (self.bounds < 0).any():
            found.append("shop count bounds must be non-negative")
        low, ideal, high = self.bounds[:, 0], self.bounds[:, 1], self.bounds[:, 2]
        broken = np.flatnonzero((low > ideal) | (ideal > high))
        if broken.size:
            found.append(f"min <= ideal <= max broken for shop types {broken.tolist()}")
        if high.sum() < self.n_locations:
            found.append(f"maximum counts sum to {int(high.sum())}, fewer than {self.n_locations} locations")
        if not np.isin(self.groups, (0, 1)).all():
            found.append("group membership must be 0/1")
        sizes = self.groups.sum(axis=0)
        bad = [int(g) for g in np.flatnonzero((sizes < MIN_GROUP_SIZE) | (sizes > MAX_GROUP_SIZE))]
        if bad:
            found.append(f"groups {bad} have sizes outside {MIN_GROUP_SIZE}..{MAX_GROUP_SIZE}")
        if (self.groups.sum(axis=1) > 2).any():
            found.append("a shop type may belong to at most two groups")
        if min(self.size_caps.as_tuple()) < 0:
            found.append("size caps must be non-negative")
        if (self.attractiveness < 0).any() or (self.fixed_rent < 0).any():
            found.append("attractiveness and fixed rents must be non-negative")
        if len(self.group_bonus) != 3:
            found.append("group bonus needs factors for 0, 1 and 2 complete groups")
        return found

    def validate(self) -> "MallInstance":
        problems = self.problems()
        if problems:
            raise InstanceValidationError(self.name, problems)
        return self

    def __len__(self) -> int:
        return self.n_locations

    @property
    def n_locations(self) -> int:
        return self.areas[-1].stop if self.areas else 0

    @property
    def n_areas(self) -> int:
        return len(self.areas)

    @property
    def n_types(self) -> int:
        return int(self.bounds.shape[0])

    @property
    def n_groups(self) -> int:
        return int(self.groups.shape[1])

    @property
    def minimum(self) -> np.ndarray:
        return self.bounds[:, 0]

    @property
    def ideal(self) -> np.ndarray:
        return self.bounds[:, 1]

    @property
    def maximum(self) -> np.ndarray:
        return self.bounds[:, 2]

    @cached_property
    def area_of(self) -> np.ndarray:
        """Area index of every location."""
        owner = np.empty(self.n_locations, dtype=np.int64)
        for k, area in enumerate(self.areas):
            owner[area.start:area.stop] = k
        return owner

    @cached_property
    def group_sizes(self) -> np.ndarray:
        return self.groups.sum(axis=0)

    def check_layout(self, layout: Sequence[int]) -> None:
        found = []
        if len(layout) != self.n_locations:
            found.append(f"layout has {len(layout)} genes for {self.n_locations} locations")
        elif any(not 0 <= j < self.n_types for j in layout):
            found.append(f"layout uses shop types outside 0..{self.n_types - 1}")
        if found:
            raise InstanceValidationError(self.name, found)


@dataclass(frozen=True)
class LayoutStats:
    """
    Shop counts of one layout.

    ``counts[j, k]`` locations of type j in area k form one shop unit split
    into ``large = n // 3`` large shops plus a medium shop (remainder 2) or a
    small shop (remainder 1).
    """
    counts: np.ndarray
    totals: np.ndarray
    large: np.ndarray
    medium: np.ndarray
    small: np.ndarray
    group_complete: np.ndarray # (A, G) 1 when every member type is present in the area

    @property
    def shops_by_size(self) -> tuple[int, int, int]:
        """Total small, medium and large shops in the mall."""
        return int(self.small.sum()), int(self.medium.sum()), int(self.large.sum())
