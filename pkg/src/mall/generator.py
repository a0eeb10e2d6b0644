"""
Synthetic mall instances for the benchmark sets.

Each set fixes the number of locations, areas, shop types and groups and
how tight the shop size caps and shop count bounds are. Sets 4-7 share
their dimensions, so ``generate_linked`` can draw one layout of areas,
groups, ideal counts and rents and vary only the tightness across the
four files.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..core.errors import InfeasibleSpecError, InstanceValidationError
from ..utils.seed_generator import make_rng
from .models import MAX_GROUP_SIZE, MIN_GROUP_SIZE, MallInstance, SizeCaps

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 200
MIN_AREA_SIZE = 5
MAX_AREA_SIZE = 30
MAX_TYPE_COUNT = 10
TIGHT_SIZE_CAPS = SizeCaps(small=6, medium=17, large=22)
# share of N that the minimum counts add up to
COUNT_TIGHTNESS = {"average": (0.60, 0.80), "tight": (0.95, 0.98), "loose": (0.0, 0.0)}
# probability of a shop type belonging to 0, 1 or 2 groups
GROUPS_PER_TYPE = (0.2, 0.65, 0.15)
ATTRACTIVENESS_RANGE = (5, 25)
FIXED_RENT_RANGE = (1000, 3000)


@dataclass(frozen=True)
class MallSetSpec:
    n_locations: int
    n_areas: int
    n_types: int
    n_groups: int
    size: str # loose | tight
    count: str # loose | average | tight


MALL_SETS: dict[int, MallSetSpec] = {
    1: MallSetSpec(20, 2, 12, 3, "loose", "average"),
    2: MallSetSpec(50, 4, 16, 4, "loose", "average"),
    3: MallSetSpec(100, 5, 50, 8, "loose", "loose"),
    4: MallSetSpec(100, 5, 20, 5, "loose", "average"),
    5: MallSetSpec(100, 5, 20, 5, "loose", "tight"),
    6: MallSetSpec(100, 5, 20, 5, "tight", "average"),
    7: MallSetSpec(100, 5, 20, 5, "tight", "tight"),
}
LINKED_SETS = (4, 5, 6, 7)


@dataclass(frozen=True)
class MallSkeleton:
    """Everything the linked sets share."""
    area_sizes: tuple[int, ...]
    groups: np.ndarray
    ideal: np.ndarray
    attractiveness: np.ndarray
    fixed_rent: np.ndarray


def set_spec(set_id: int) -> MallSetSpec:
    if set_id not in MALL_SETS:
        raise InfeasibleSpecError(f"unknown mall set {set_id}, expected one of {sorted(MALL_SETS)}")
    return MALL_SETS[set_id]


def _spread(total: int, caps: np.ndarray, rng: np.random.Generator, start: np.ndarray | None = None) -> np.ndarray:
    """Add ``total`` units one at a time to random slots still below their cap."""
    values = np.zeros(len(caps), dtype=np.int64) if start is None else start.astype(np.int64).copy()
    for _ in range(total):
        open_slots = np.flatnonzero(values < caps)
        if open_slots.size == 0:
            raise InfeasibleSpecError(f"cannot place {total} units under caps {caps.tolist()}")
        values[int(rng.choice(open_slots))] += 1
    return values


def draw_area_sizes(n_locations: int, n_areas: int, rng: np.random.Generator) -> tuple[int, ...]:
    if not MIN_AREA_SIZE * n_areas <= n_locations <= MAX_AREA_SIZE * n_areas:
        raise InfeasibleSpecError(f"{n_locations} locations do not fit {n_areas} areas of {MIN_AREA_SIZE}-{MAX_AREA_SIZE}")
    start = np.full(n_areas, MIN_AREA_SIZE, dtype=np.int64)
    sizes = _spread(n_locations - MIN_AREA_SIZE * n_areas, np.full(n_areas, MAX_AREA_SIZE), rng, start)
    return tuple(int(s) for s in sizes)


def draw_groups(n_types: int, n_groups: int, rng: np.random.Generator) -> np.ndarray:
    """
    Each type joins 0-2 distinct groups (1 most often); redraw until every
    group holds 3-10 members.
    """
    for _ in range(MAX_ATTEMPTS):
        groups = np.zeros((n_types, n_groups), dtype=np.int64)
        for j in range(n_types):
            k = min(int(rng.choice(3, p=GROUPS_PER_TYPE)), n_groups)
            groups[j, rng.choice(n_groups, size=k, replace=False)] = 1
        sizes = groups.sum(axis=0)
        if ((sizes >= MIN_GROUP_SIZE) & (sizes <= MAX_GROUP_SIZE)).all():
            return groups
    raise InfeasibleSpecError(f"no group membership for {n_types} types in {n_groups} groups after {MAX_ATTEMPTS} draws")


def draw_skeleton(spec: MallSetSpec, rng: np.random.Generator) -> MallSkeleton:
    area_sizes = draw_area_sizes(spec.n_locations, spec.n_areas, rng)
    groups = draw_groups(spec.n_types, spec.n_groups, rng)
    if spec.n_types * MAX_TYPE_COUNT < spec.n_locations:
        raise InfeasibleSpecError(f"{spec.n_types} types of at most {MAX_TYPE_COUNT} cannot fill {spec.n_locations} locations")
    # ideal counts fill the mall exactly
    ideal = _spread(spec.n_locations, np.full(spec.n_types, MAX_TYPE_COUNT), rng)

    low, high = ATTRACTIVENESS_RANGE
    attractiveness = np.sort(rng.integers(low, high + 1, size=spec.n_areas)).astype(float)
    low, high = FIXED_RENT_RANGE
    # later areas draw from a higher floor
    floors = low + (high - low) * np.arange(spec.n_areas) / (2 * max(spec.n_areas - 1, 1))
    fixed_rent = np.column_stack([rng.integers(int(f), high + 1, size=spec.n_types) for f in floors]).astype(float)
    return MallSkeleton(area_sizes, groups, ideal, attractiveness, fixed_rent)


def draw_bounds(ideal: np.ndarray, count: str, n_locations: int, rng: np.random.Generator) -> np.ndarray:
    """
    Minimum and maximum counts around the ideal ones. The minimums add up to
    the tightness band's share of N; loose instances have no minimums and
    the widest maximums.
    """
    if count not in COUNT_TIGHTNESS:
        raise InfeasibleSpecError(f"unknown count tightness {count!r}")
    n_types = len(ideal)
    if count == "loose":
        return np.column_stack([np.zeros(n_types, dtype=np.int64), ideal, np.full(n_types, MAX_TYPE_COUNT)])

    share_low, share_high = COUNT_TIGHTNESS[count]
    target = int(rng.integers(int(np.ceil(share_low * n_locations)), int(np.floor(share_high * n_locations)) + 1))
    if target > ideal.sum():
        raise InfeasibleSpecError(f"minimum total {target} exceeds ideal total {int(ideal.sum())}")
    minimum = _spread(target, ideal, rng)
    slack = MAX_TYPE_COUNT - ideal
    if count == "tight":
        slack = np.minimum(slack, 2)
    maximum = ideal + rng.integers(0, slack + 1)
    return np.column_stack([minimum, ideal, maximum])


def _build(spec: MallSetSpec, skeleton: MallSkeleton, rng: np.random.Generator, name: str) -> MallInstance:
    bounds = draw_bounds(skeleton.ideal, spec.count, spec.n_locations, rng)
    caps = TIGHT_SIZE_CAPS if spec.size == "tight" else SizeCaps(spec.n_locations, spec.n_locations, spec.n_locations)
    return MallInstance.build(
        skeleton.area_sizes,
        skeleton.groups,
        bounds,
        caps,
        skeleton.attractiveness,
        skeleton.fixed_rent,
        name=name,
    )


def generate_instance(set_id: int, seed: int, name: str | None = None) -> MallInstance:
    """
    Raises:
        InfeasibleSpecError: unknown set, or the rules cannot be met within
            the retry budget
    """
    spec = set_spec(set_id)
    rng = make_rng(seed)
    name = name or f"mall_set{set_id}_{seed}"
    for attempt in range(MAX_ATTEMPTS):
        try:
            return _build(spec, draw_skeleton(spec, rng), rng, name)
        except (InfeasibleSpecError, InstanceValidationError) as e:
            logger.debug(f"{name}: attempt {attempt} rejected: {e}")
    raise InfeasibleSpecError(f"{name}: no valid instance after {MAX_ATTEMPTS} attempts")


def generate_linked(seed: int, prefix: str | None = None) -> dict[int, MallInstance]:
    """
    One instance per set 4-7 on a shared skeleton: areas, attractiveness,
    groups, ideal counts and fixed rents agree; size caps and count bounds
    follow each set.
    """
    rng = make_rng(seed)
    prefix = prefix or f"mall_linked_{seed}"
    skeleton = draw_skeleton(MALL_SETS[LINKED_SETS[0]], rng)
    return {
        set_id: _build(MALL_SETS[set_id], skeleton, rng, f"{prefix}_set{set_id}")
        for set_id in LINKED_SETS
    }


def micro_mall_instance(seed: int, n_locations: int = 8, n_types: int = 3, n_areas: int = 2) -> MallInstance:
    """
    A tiny instance small enough to enumerate every layout: one group of
    all types, equal areas and loose bounds around a random ideal count.
    """
    rng = make_rng(seed)
    base, extra = divmod(n_locations, n_areas)
    area_sizes = [base + (1 if k < extra else 0) for k in range(n_areas)]
    ideal = _spread(n_locations, np.full(n_types, n_locations), rng)
    minimum = np.array([int(rng.integers(0, c + 1)) for c in ideal])
    bounds = np.column_stack([minimum, ideal, np.full(n_types, n_locations)])
    groups = np.ones((n_types, 1), dtype=np.int64) if n_types >= MIN_GROUP_SIZE else np.zeros((n_types, 0), dtype=np.int64)
    low, high = ATTRACTIVENESS_RANGE
    low_rent, high_rent = FIXED_RENT_RANGE
    return MallInstance.build(
        area_sizes,
        groups,
        bounds,
        SizeCaps(n_locations, n_locations, n_locations),
        np.sort(rng.integers(low, high + 1, size=n_areas)).astype(float),
        rng.integers(low_rent, high_rent + 1, size=(n_types, n_areas)).astype(float),
        name=f"mall_micro_{seed}",
    )
