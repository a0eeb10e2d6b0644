"""
Order-preserving crossovers for permutation genotypes.

All operators take explicit cut points or templates so they can be driven
deterministically; the ``random_*`` helpers draw those uniformly from the
run's generator.
"""

from typing import Sequence

import numpy as np

from ..core.errors import GaConfigurationError, OperatorError

Permutation = tuple[int, ...]


def _check_parents(operator: str, p1: Sequence[int], p2: Sequence[int]) -> int:
    if len(p1) != len(p2):
        raise OperatorError(operator, f"parents differ in length: {len(p1)} vs {len(p2)}")
    if sorted(p1) != sorted(p2) or len(set(p1)) != len(p1):
        raise OperatorError(operator, "parents are not permutations of the same values")
    return len(p1)


def _fill(kept: list[int | None], donor: Sequence[int]) -> Permutation:
    """Fill the empty slots left to right with the missing values in donor order."""
    present = {v for v in kept if v is not None}
    missing = iter(v for v in donor if v not in present)
    return tuple(v if v is not None else next(missing) for v in kept)


def order_based_crossover(p1: Sequence[int], p2: Sequence[int], cut1: int, cut2: int) -> tuple[Permutation, Permutation]:
    """
    c1 keeps p1's segment [cut1, cut2) in place and takes the rest in p2's
    order; c2 is symmetric.

    Raises:
        OperatorError: cuts outside 0 <= cut1 < cut2 <= n
    """
    n = _check_parents("order_based_crossover", p1, p2)
    if not 0 <= cut1 < cut2 <= n:
        raise OperatorError("order_based_crossover", f"invalid cuts ({cut1}, {cut2}) for n={n}")

    def child(keep: Sequence[int], donor: Sequence[int]) -> Permutation:
        kept: list[int | None] = [None] * n
        kept[cut1:cut2] = keep[cut1:cut2]
        return _fill(kept, donor)

    return child(p1, p2), child(p2, p1)


def c1_crossover(p1: Sequence[int], p2: Sequence[int], cut: int) -> tuple[Permutation, Permutation]:
    """Prefix of one parent, then the other parent's order for the remaining values."""
    n = _check_parents("c1_crossover", p1, p2)
    if not 0 < cut < n:
        raise OperatorError("c1_crossover", f"cut must be in [1, {n - 1}], got {cut}")

    def child(head: Sequence[int], donor: Sequence[int]) -> Permutation:
        kept: list[int | None] = list(head[:cut]) + [None] * (n - cut)
        return _fill(kept, donor)

    return child(p1, p2), child(p2, p1)


def pmx_crossover(p1: Sequence[int], p2: Sequence[int], cut1: int, cut2: int) -> tuple[Permutation, Permutation]:
    """
    Partially mapped crossover over the section [cut1, cut2).

    Values outside the section that clash with the copied section are mapped
    through the section's positional correspondence, following chains until a
    free value is reached.
    """
    n = _check_parents("pmx_crossover", p1, p2)
    if not 0 <= cut1 < cut2 <= n:
        raise OperatorError("pmx_crossover", f"invalid cuts ({cut1}, {cut2}) for n={n}")

    def child(base: Sequence[int], donor: Sequence[int]) -> Permutation:
        section = list(donor[cut1:cut2])
        # donor value -> base value at the same section position
        mapping = {donor[i]: base[i] for i in range(cut1, cut2)}
        result = list(base)
        result[cut1:cut2] = section
        in_section = set(section)
        for i in list(range(cut1)) + list(range(cut2, n)):
            value = base[i]
            while value in in_section:
                value = mapping[value]
            result[i] = value
        return tuple(result)

    return child(p1, p2), child(p2, p1)


def pux_crossover_with_template(
    p1: Sequence[int],
    p2: Sequence[int],
    template: Sequence[int],
) -> tuple[Permutation, Permutation]:
    """
    Uniform order crossover for a given binary template.

    c1 keeps p1 where the template is 1 and fills the rest in p2's order;
    c2 keeps p2 where the template is 0 and fills the rest in p1's order.
    """
    n = _check_parents("pux_crossover", p1, p2)
    if len(template) != n or any(t not in (0, 1) for t in template):
        raise OperatorError("pux_crossover", "template must be a 0/1 sequence of the parents' length")
    kept1: list[int | None] = [p1[i] if template[i] == 1 else None for i in range(n)]
    kept2: list[int | None] = [p2[i] if template[i] == 0 else None for i in range(n)]
    return _fill(kept1, p2), _fill(kept2, p1)


def pux_crossover(
    p1: Sequence[int],
    p2: Sequence[int],
    p: float,
    rng: np.random.Generator,
) -> tuple[Permutation, Permutation]:
    """
    Parameterised uniform order crossover: template bits are 1 with
    probability ``p``. ``p = 0.5`` is plain uniform order crossover.

    Raises:
        GaConfigurationError: p outside [0.5, 1]
    """
    if not 0.5 <= p <= 1.0:
        raise GaConfigurationError("crossover_p", f"must be in [0.5, 1], got {p}")
    template = (rng.random(len(p1)) < p).astype(int)
    return pux_crossover_with_template(p1, p2, template.tolist())


def random_cuts(n: int, rng: np.random.Generator, upper: int | None = None) -> tuple[int, int]:
    """Two cut points 0 <= cut1 < cut2 <= upper, uniform over valid pairs."""
    upper = n if upper is None else upper
    if upper < 1:
        raise OperatorError("random_cuts", f"no valid cut pair for n={n}")
    a, b = sorted(int(x) for x in rng.choice(upper + 1, size=2, replace=False))
    return a, b


def random_cut(n: int, rng: np.random.Generator, upper: int | None = None) -> int:
    """One cut point in 1..min(upper, n-1)."""
    top = n - 1 if upper is None else max(1, min(upper, n - 1))
    if top < 1:
        raise OperatorError("random_cut", f"no valid cut for n={n}")
    return int(rng.integers(1, top + 1))


def crossover_permutations(
    operator: str,
    p1: Sequence[int],
    p2: Sequence[int],
    rng: np.random.Generator,
    p: float = 0.66,
    boundary: int | None = None,
) -> tuple[Permutation, Permutation]:
    """
    Dispatch by operator name (``pux``, ``c1``, ``pmx``, ``order_based``).

    ``boundary`` limits C1 cut points to the first ``boundary`` positions and
    keeps both two-point cuts at or before it.
    """
    n = len(p1)
    if n < 2:
        return tuple(p1), tuple(p2)
    if operator == "pux":
        return pux_crossover(p1, p2, p, rng)
    if operator == "c1":
        return c1_crossover(p1, p2, random_cut(n, rng, boundary))
    if operator in ("pmx", "order_based"):
        cut1, cut2 = random_cuts(n, rng, None if boundary is None else max(1, min(boundary, n)))
        if operator == "pmx":
            return pmx_crossover(p1, p2, cut1, cut2)
        return order_based_crossover(p1, p2, cut1, cut2)
    raise GaConfigurationError("crossover", f"unknown permutation crossover {operator!r}")
