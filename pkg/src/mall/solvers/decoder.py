"""
Greedy decoder from a permutation of locations to a mall layout.

Locations are filled in permutation order. Every shop type still below its
maximum is scored for the location and the highest score wins, the lowest
type index on ties:

    s = w_medium [creates a medium shop] + w_large [creates a large shop]
      + w_size (cap of the created size - shops of that size - 1)
      + w_ideal (ideal count - count after placing)
      + w_member (new-member score) + w_group (groups completed in the area)
      + the fixed rent of the type in the area
"""
import logging
from dataclasses import dataclass, fields
from typing import Sequence

import numpy as np

from ..models import MAX_GROUP_SIZE, Layout, MallInstance

logger = logging.getLogger(__name__)

N_DECODER_WEIGHTS = 6


@dataclass(frozen=True)
class MallDecoderWeights:
    medium: float = 500.0
    large: float = 1000.0
    size: float = 250.0
    ideal: float = 500.0
    member: float = 200.0
    group: float = 2000.0

    def __post_init__(self):
        if min(self.as_tuple()) < 0:
            raise ValueError(f"decoder weights must be non-negative, got {self}")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> "MallDecoderWeights":
        if len(values) != N_DECODER_WEIGHTS:
            raise ValueError(f"expected {N_DECODER_WEIGHTS} decoder weights, got {len(values)}")
        return cls(*(float(v) for v in values))


PRESETS: dict[str, MallDecoderWeights] = {
    "low": MallDecoderWeights(500, 1000, 100, 200, 200, 2000),
    "medium": MallDecoderWeights(500, 1000, 250, 500, 200, 2000),
    "high": MallDecoderWeights(500, 1000, 1000, 2000, 200, 2000),
}


@dataclass
class DecodeDiagnostics:
    decoded: int = 0
    at_max_fallbacks: int = 0 # 所有类型都已达上限时的回退次数

    def merge(self, other: "DecodeDiagnostics") -> None:
        self.decoded += other.decoded
        self.at_max_fallbacks += other.at_max_fallbacks


class DecodeWorkspace:
    """Running counts while a layout is built."""

    def __init__(self, instance: MallInstance):
        self.instance = instance
        self.counts = np.zeros((instance.n_types, instance.n_areas), dtype=np.int64)
        self.totals = np.zeros(instance.n_types, dtype=np.int64)
        # shops of each size so far: small, medium, large
        self.sizes = np.zeros(3, dtype=np.int64)
        self.caps = np.asarray(instance.size_caps.as_tuple(), dtype=np.int64)

    def scores(self, area: int, weights: MallDecoderWeights) -> np.ndarray:
        inst = self.instance
        n_after = self.counts[:, area] + 1
        rest = n_after % 3
        creates_small = rest == 1
        creates_medium = rest == 2
        creates_large = rest == 0
        created = np.where(creates_small, 0, np.where(creates_medium, 1, 2))
        slack = self.caps[created] - self.sizes[created] - 1

        present = self.counts[:, area] > 0
        members_present = present.astype(np.int64) @ inst.groups
        # per group: member score for a newcomer, and completion once a newcomer joins
        newcomer = MAX_GROUP_SIZE - inst.group_sizes + members_present
        completes = (members_present + 1 == inst.group_sizes).astype(np.int64)
        stays_complete = (members_present == inst.group_sizes).astype(np.int64)
        member = np.where(present, 0, inst.groups @ newcomer)
        group = np.where(present, inst.groups @ stays_complete, inst.groups @ completes)

        return (
            weights.medium * creates_medium
            + weights.large * creates_large
            + weights.size * slack
            + weights.ideal * (inst.ideal - (self.totals + 1))
            + weights.member * member
            + weights.group * group
            + inst.fixed_rent[:, area]
        )

    def place(self, j: int, area: int) -> None:
        n = self.counts[j, area]
        # the unit of n locations grows to n + 1: small -> medium -> large + nothing
        if n % 3 == 1:
            self.sizes[0] -= 1
            self.sizes[1] += 1
        elif n % 3 == 2:
            self.sizes[1] -= 1
            self.sizes[2] += 1
        else:
            self.sizes[0] += 1
        self.counts[j, area] += 1
        self.totals[j] += 1


def decode_mall(
    perm: Sequence[int],
    instance: MallInstance,
    weights: MallDecoderWeights,
) -> tuple[Layout, DecodeDiagnostics]:
    """
    Returns:
        (layout, diagnostics); when every type is at its maximum the type
        exceeding it least is placed and counted as a fallback
    """
    workspace = DecodeWorkspace(instance)
    diagnostics = DecodeDiagnostics()
    layout = [0] * instance.n_locations
    area_of = instance.area_of
    maximum = instance.maximum
    for location in perm:
        area = int(area_of[location])
        open_types = workspace.totals < maximum
        if open_types.any():
            scores = np.where(open_types, workspace.scores(area, weights), -np.inf)
            j = int(np.argmax(scores))
        else:
            j = int(np.argmin(workspace.totals - maximum))
            diagnostics.at_max_fallbacks += 1
        layout[location] = j
        workspace.place(j, area)
    diagnostics.decoded = 1
    return tuple(layout), diagnostics
