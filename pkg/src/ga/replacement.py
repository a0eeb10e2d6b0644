import logging
import math

from ..core.errors import InsufficientChildrenError
from .population import Individual, Population

logger = logging.getLogger(__name__)


def elite_count(capacity: int, elite_fraction: float) -> int:
    return min(capacity, max(1, math.ceil(elite_fraction * capacity - 1e-9)))


def replace(old: Population, children: list[Individual], elite_fraction: float, dedupe: bool) -> Population:
    """
    Generational replacement keeping the best ``elite_fraction`` of ``old``.

    Elites are taken best-first; with ``dedupe`` a genotype already kept is
    skipped and the next distinct member is promoted. The rest is filled from
    ``children`` in generation order, skipping children that duplicate an
    elite while there are enough spare children to do so.

    Raises:
        InsufficientChildrenError: fewer children than non-elite slots
    """
    n_elite = elite_count(old.capacity, elite_fraction)
    needed = old.capacity - n_elite
    if len(children) < needed:
        raise InsufficientChildrenError(needed, len(children))

    elites: list[Individual] = []
    seen: set[tuple[int, ...]] = set()
    for member in old.ranked():
        if len(elites) == n_elite:
            break
        if dedupe and member.genotype in seen:
            continue
        elites.append(member)
        seen.add(member.genotype)

    slots = old.capacity - len(elites)
    fill: list[Individual] = []
    spare = len(children) - slots
    for child in children:
        if len(fill) == slots:
            break
        if dedupe and child.genotype in seen and spare > 0:
            spare -= 1
            continue
        fill.append(child)

    if len(fill) < slots:
        # dedupe removed elites; top up from the old population in rank order
        kept = {id(e) for e in elites}
        for member in old.ranked():
            if len(fill) == slots:
                break
            if id(member) not in kept:
                fill.append(member)

    members = elites + fill
    if len(members) != old.capacity:
        raise InsufficientChildrenError(old.capacity, len(members))
    return Population(members=members, capacity=old.capacity, maximize=old.maximize, name=old.name, extra=old.extra)
