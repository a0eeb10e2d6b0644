from typing import Sequence

import numpy as np


def bounded_candidates(
    candidates: Sequence[int],
    costs: Sequence[int],
    best_cost: float | None,
) -> tuple[list[int], bool]:
    """
    Drop patterns costing more than the best feasible objective ``best_cost``.

    Returns:
        (kept patterns, whether the bound emptied the list and was ignored)
    """
    if best_cost is None:
        return list(candidates), False
    kept = [j for j, c in zip(candidates, costs) if c <= best_cost]
    if not kept:
        return list(candidates), True
    return kept, False


def apply_simple_bound(candidates: Sequence[int], costs: Sequence[int], best_cost: float | None) -> list[int]:
    """No nurse may take a pattern costing more than a known feasible roster in total."""
    return bounded_candidates(candidates, costs, best_cost)[0]


def boundary_point(cumulative: Sequence[float], bound: float | None) -> int:
    """
    First position whose cumulative cost exceeds ``bound``; genes from there
    on cannot be part of a better solution's prefix. Never below 1, and the
    full length when no bound is known or it is never exceeded.
    """
    n = len(cumulative)
    if bound is None:
        return n
    above = np.flatnonzero(np.asarray(cumulative, dtype=float) > bound)
    if len(above) == 0:
        return n
    return max(int(above[0]), 1)
