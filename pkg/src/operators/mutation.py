from typing import Sequence

import numpy as np

from ..core.errors import GaConfigurationError, OperatorError


def _check_rate(rate: float) -> None:
    if not 0.0 <= rate <= 1.0:
        raise GaConfigurationError("mutation_rate", f"must be in [0, 1], got {rate}")


def single_gene_mutation(
    s: Sequence[int],
    rate: float,
    domains: Sequence[Sequence[int]],
    rng: np.random.Generator,
) -> tuple[int, ...]:
    """
    Re-draw each gene uniformly from its own domain with probability ``rate``.

    Raises:
        OperatorError: a position has an empty domain
    """
    _check_rate(rate)
    if len(domains) != len(s):
        raise OperatorError("single_gene_mutation", f"{len(domains)} domains for {len(s)} genes")
    hits = np.flatnonzero(rng.random(len(s)) < rate)
    if len(hits) == 0:
        return tuple(s)
    out = list(s)
    for i in hits:
        domain = domains[i]
        if len(domain) == 0:
            raise OperatorError("single_gene_mutation", f"empty domain at position {i}")
        out[i] = int(domain[int(rng.integers(len(domain)))])
    return tuple(out)


def swap_positions(s: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    out = list(s)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def swap_mutation(
    s: Sequence[int],
    rate: float,
    rng: np.random.Generator,
    boundary: int | None = None,
) -> tuple[int, ...]:
    """
    Each position is selected with probability ``rate`` and swapped with a
    uniformly chosen partner.

    With ``boundary`` set, at least one position of every swap lies before
    it: a selected position at or after the boundary takes its partner from
    ``0..boundary-1``.
    """
    _check_rate(rate)
    n = len(s)
    if n < 2:
        return tuple(s)
    out = list(s)
    for i in np.flatnonzero(rng.random(n) < rate):
        i = int(i)
        if boundary is not None and i >= boundary:
            j = int(rng.integers(max(1, boundary)))
        else:
            j = int(rng.integers(n))
        out[i], out[j] = out[j], out[i]
    return tuple(out)


def scramble_mutation(s: Sequence[int], rate: float, rng: np.random.Generator) -> tuple[int, ...]:
    """With probability ``rate`` shuffle the values between two random points."""
    _check_rate(rate)
    n = len(s)
    if n < 2 or rng.random() >= rate:
        return tuple(s)
    a, b = sorted(int(x) for x in rng.choice(n + 1, size=2, replace=False))
    return scramble_segment(s, a, b, rng)


def scramble_segment(s: Sequence[int], start: int, end: int, rng: np.random.Generator) -> tuple[int, ...]:
    out = list(s)
    segment = out[start:end]
    if len(segment) > 1:
        out[start:end] = [segment[i] for i in rng.permutation(len(segment))]
    return tuple(out)


def mutate_permutation(
    operator: str,
    s: Sequence[int],
    rate: float,
    rng: np.random.Generator,
    boundary: int | None = None,
) -> tuple[int, ...]:
    if operator == "swap":
        return swap_mutation(s, rate, rng, boundary)
    if operator == "scramble":
        return scramble_mutation(s, rate, rng)
    raise GaConfigurationError("mutation", f"unknown permutation mutation {operator!r}")
