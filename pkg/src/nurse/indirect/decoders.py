"""
Greedy decoders from a nurse permutation to a roster.

Nurses are scheduled one at a time in permutation order against a shortfall
workspace. ``remaining[k, s]`` is the cumulative cover still missing at
grade level ``s`` on shift ``k``; the per-grade shortfall is its increment
over the level above, so a grade-1 nurse fills grade-1 gaps first and then
the deeper levels.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..models import MAX_COST, N_GRADES, NurseInstance, Roster
from ..patterns import DAYS_PER_WEEK, PatternKind
from .bounds import bounded_candidates

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecoderWeights:
    cover: tuple[float, float, float] = (8.0, 2.0, 1.0)
    preference: float = 0.5

    def __post_init__(self):
        if len(self.cover) != N_GRADES or min(self.cover) < 0 or self.preference < 0:
            raise ValueError(f"decoder weights must be three non-negative cover weights, got {self}")


@dataclass
class DecodeStats:
    decoded: int = 0
    bound_fallbacks: int = 0
    highest_fallbacks: int = 0


class ShortfallWorkspace:
    """Remaining cover per shift and grade level while a roster is built."""

    def __init__(self, instance: NurseInstance):
        self.instance = instance
        self.remaining = instance.demand.astype(np.int64).copy()
        self.matrix = instance.table.matrix.astype(np.int64)

    def per_grade(self) -> np.ndarray:
        """(14, 3) shortfall that needs exactly each grade level."""
        split = self.remaining.copy()
        split[:, 1:] = np.maximum(self.remaining[:, 1:] - self.remaining[:, :-1], 0)
        return split

    def assign(self, i: int, j: int) -> None:
        grade = self.instance.nurses[i].grade
        bits = self.matrix[j]
        self.remaining[:, grade - 1:] = np.maximum(self.remaining[:, grade - 1:] - bits[:, None], 0)


def _candidates(
    instance: NurseInstance,
    i: int,
    order: Sequence[int],
    best_cost: float | None,
    stats: DecodeStats | None,
) -> list[int]:
    costs = [instance.cost(i, j) for j in order]
    kept, fell_back = bounded_candidates(order, costs, best_cost)
    if fell_back and stats is not None:
        stats.bound_fallbacks += 1
    return kept


def _top_shifts(values: np.ndarray, k: int, offset: int) -> frozenset[int]:
    # stable sort keeps Sunday-to-Saturday order among equal shortfalls
    ranked = np.argsort(-values, kind="stable")[:k]
    return frozenset(int(d) + offset for d in ranked)


def decode_cover_highest(
    perm: Sequence[int],
    instance: NurseInstance,
    orders: Sequence[Sequence[int]] | None = None,
    best_cost: float | None = None,
    stats: DecodeStats | None = None,
) -> Roster:
    """
    Each nurse covers the shifts where her own grade is most short.

    A nurse looks at her grade's shortfall while any is left, then at the
    next grade down. A standard nurse takes the side (days or nights) with
    the single largest shortfall, then the pattern covering the ``k`` most
    short shifts of that side; ties go to the earlier day. When no pattern
    covers exactly those shifts, and for combined contracts, the pattern
    with the largest shortfall overlap is taken.
    """
    workspace = ShortfallWorkspace(instance)
    roster = [0] * len(instance)
    table = instance.table
    for i in perm:
        nurse = instance.nurses[i]
        order = orders[i] if orders is not None else instance.feasible[i]
        candidates = _candidates(instance, i, order, best_cost, stats)
        split = workspace.per_grade()
        need = np.zeros(split.shape[0], dtype=np.int64)
        for s in range(nurse.grade - 1, N_GRADES):
            if split[:, s].any():
                need = split[:, s]
                break

        choice = None
        if not nurse.special:
            has_days = any(table[j].kind is PatternKind.DAY for j in candidates)
            has_nights = any(table[j].kind is PatternKind.NIGHT for j in candidates)
            day_peak = need[:DAYS_PER_WEEK].max() if has_days else -1
            night_peak = need[DAYS_PER_WEEK:].max() if has_nights else -1
            on_days = day_peak >= night_peak
            kind = PatternKind.DAY if on_days else PatternKind.NIGHT
            k = nurse.days if on_days else nurse.nights
            offset = 0 if on_days else DAYS_PER_WEEK
            target = _top_shifts(need[offset:offset + DAYS_PER_WEEK], k, offset)
            for j in candidates:
                pattern = table[j]
                if pattern.kind is kind and frozenset(int(x) for x in np.flatnonzero(pattern.bits)) == target:
                    choice = j
                    break
            if choice is None and stats is not None:
                stats.highest_fallbacks += 1

        if choice is None:
            overlap = workspace.matrix[np.asarray(candidates)] @ need
            choice = candidates[int(np.argmax(overlap))]
        roster[i] = int(choice)
        workspace.assign(i, choice)
    if stats is not None:
        stats.decoded += 1
    return tuple(roster)


def _decode_scored(
    perm: Sequence[int],
    instance: NurseInstance,
    weights: DecoderWeights,
    orders: Sequence[Sequence[int]],
    best_cost: float | None,
    stats: DecodeStats | None,
    counts: bool,
) -> Roster:
    workspace = ShortfallWorkspace(instance)
    roster = [0] * len(instance)
    cover = np.asarray(weights.cover, dtype=float)
    for i in perm:
        candidates = np.asarray(_candidates(instance, i, orders[i], best_cost, stats), dtype=np.int64)
        split = workspace.per_grade()
        d = split if counts else (split > 0).astype(np.int64)
        # value of one worked shift for this nurse, over the grades it may cover
        shift_value = d @ (cover * instance.grade_at_most[i])
        preference = weights.preference * (MAX_COST - instance.cost_matrix[i, candidates])
        scores = preference + workspace.matrix[candidates] @ shift_value
        choice = int(candidates[int(np.argmax(scores))])
        roster[i] = choice
        workspace.assign(i, choice)
    if stats is not None:
        stats.decoded += 1
    return tuple(roster)


def decode_overall_contribution(
    perm: Sequence[int],
    instance: NurseInstance,
    weights: DecoderWeights,
    orders: Sequence[Sequence[int]],
    best_cost: float | None = None,
    stats: DecodeStats | None = None,
) -> Roster:
    """
    Score every pattern ``j`` of nurse ``i``:

        preference weight * (100 - cost)
        + sum over coverable grades of weight * shortage shifts the pattern works

    where a shift counts once while that grade is still short on it. The
    highest score wins; ties go to the first pattern in the search order.
    """
    return _decode_scored(perm, instance, weights, orders, best_cost, stats, counts=False)


def decode_combined(
    perm: Sequence[int],
    instance: NurseInstance,
    weights: DecoderWeights,
    orders: Sequence[Sequence[int]],
    best_cost: float | None = None,
    stats: DecodeStats | None = None,
) -> Roster:
    """As ``decode_overall_contribution`` scoring shortfall counts instead of short shifts."""
    return _decode_scored(perm, instance, weights, orders, best_cost, stats, counts=True)


DECODERS = {
    "highest": decode_cover_highest,
    "overall": decode_overall_contribution,
    "combined": decode_combined,
}
