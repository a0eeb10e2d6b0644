"""
Crossovers for value strings: one gene per position, each drawn from that
position's own domain (a pattern index per nurse, a shop type per location).
"""

from typing import Sequence

import numpy as np

from ..core.errors import GaConfigurationError, OperatorError

ValueString = tuple[int, ...]


def _check_lengths(operator: str, parents: Sequence[Sequence[int]]) -> int:
    lengths = {len(p) for p in parents}
    if len(lengths) != 1:
        raise OperatorError(operator, f"parents differ in length: {sorted(lengths)}")
    return lengths.pop()


def kpoint_crossover(
    p1: Sequence[int],
    p2: Sequence[int],
    k: int,
    rng: np.random.Generator,
    cuts: Sequence[int] | None = None,
) -> tuple[ValueString, ValueString]:
    """
    k-point crossover. Cut points are distinct positions in 1..n-1, drawn
    uniformly unless ``cuts`` is given; segments alternate between parents.

    Raises:
        OperatorError: length mismatch, k < 1 or k >= length
    """
    n = _check_lengths("kpoint_crossover", (p1, p2))
    if k < 1 or k >= n:
        raise OperatorError("kpoint_crossover", f"k must be in [1, {n - 1}], got {k}")
    if cuts is None:
        points = sorted(int(c) for c in rng.choice(np.arange(1, n), size=k, replace=False))
    else:
        points = sorted(int(c) for c in cuts)
        if len(set(points)) != k or points[0] < 1 or points[-1] > n - 1:
            raise OperatorError("kpoint_crossover", f"invalid cut points {points}")

    c1, c2 = list(p1), list(p2)
    bounds = points + [n]
    swap = False
    start = 0
    for end in bounds:
        if swap:
            c1[start:end], c2[start:end] = list(p2[start:end]), list(p1[start:end])
        swap = not swap
        start = end
    return tuple(c1), tuple(c2)


def param_uniform_crossover(
    parents: Sequence[Sequence[int]],
    p: float,
    rng: np.random.Generator,
) -> ValueString:
    """
    Parameterised uniform crossover with 2-4 parents.

    Each gene comes from the first parent with probability ``p``, otherwise
    from one of the remaining parents chosen uniformly.

    Raises:
        GaConfigurationError: p outside [0.5, 1]
        OperatorError: fewer than two parents or mismatched lengths
    """
    if not 0.5 <= p <= 1.0:
        raise GaConfigurationError("crossover_p", f"must be in [0.5, 1], got {p}")
    if not 2 <= len(parents) <= 4:
        raise OperatorError("param_uniform_crossover", f"expected 2-4 parents, got {len(parents)}")
    n = _check_lengths("param_uniform_crossover", parents)

    stack = np.asarray(parents, dtype=np.int64)
    from_first = rng.random(n) < p
    others = rng.integers(1, len(parents), size=n)
    source = np.where(from_first, 0, others)
    return tuple(int(v) for v in stack[source, np.arange(n)])


def multi_parent_children(
    parents: Sequence[Sequence[int]],
    p: float,
    rng: np.random.Generator,
) -> list[ValueString]:
    """One child per parent, rotating which parent plays the first role."""
    children = []
    for shift in range(len(parents)):
        rotated = list(parents[shift:]) + list(parents[:shift])
        children.append(param_uniform_crossover(rotated, p, rng))
    return children


def fixed_point_crossover(parts: Sequence[tuple[Sequence[int], range]], length: int | None = None) -> ValueString:
    """
    Assemble a child from fixed segments, e.g. grade blocks of a roster or
    area blocks of a mall layout.

    ``parts`` are (source string, range) pairs. The ranges must tile
    ``0..n`` exactly once; empty ranges are allowed.

    Raises:
        OperatorError: overlapping or gapped segments, or a short source
    """
    if not parts:
        raise OperatorError("fixed_point_crossover", "no segments given")
    n = length if length is not None else len(parts[0][0])
    child: list[int | None] = [None] * n
    for source, segment in parts:
        if len(source) != n:
            raise OperatorError("fixed_point_crossover", f"source length {len(source)} != {n}")
        for i in segment:
            if i < 0 or i >= n:
                raise OperatorError("fixed_point_crossover", f"segment position {i} outside 0..{n - 1}")
            if child[i] is not None:
                raise OperatorError("fixed_point_crossover", f"segments overlap at position {i}")
            child[i] = source[i]
    gaps = [i for i, v in enumerate(child) if v is None]
    if gaps:
        raise OperatorError("fixed_point_crossover", f"segments leave gaps at {gaps[:5]}")
    return tuple(int(v) for v in child)
