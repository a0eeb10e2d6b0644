"""
Synthetic nurse instances shaped like a hospital ward: 20-30 nurses in three
grades, mostly full-time contracts with a spread of part-time options,
preference classes, graded requests and last week's history.
"""
import logging
from dataclasses import dataclass
from functools import partial

import numpy as np

from ..core.errors import InfeasibleSpecError, InstanceValidationError
from ..utils.seed_generator import make_rng
from .costs import CostVariant, build_pij, random_pij
from .knapsack import knapsack_smooth
from .models import N_GRADES, NO_REQUEST, NurseHistory, NurseInstance, NurseSpec, PreferenceClass, candidate_patterns
from .patterns import N_SHIFTS

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 20

DEFAULT_CONTRACTS: tuple[tuple[tuple[int, int, int | None], float], ...] = (
    ((5, 4, None), 0.50),
    ((4, 3, None), 0.12),
    ((4, 4, None), 0.08),
    ((3, 3, None), 0.08),
    ((3, 2, None), 0.08),
    ((2, 2, None), 0.06),
    ((2, 1, 3), 0.04),
    ((1, 1, 2), 0.04),
)

DEFAULT_PREFERENCES: tuple[tuple[PreferenceClass, float], ...] = (
    (PreferenceClass.NEUTRAL, 0.50),
    (PreferenceClass.DAYS_ONLY, 0.10),
    (PreferenceClass.NIGHTS_ONLY, 0.05),
    (PreferenceClass.DAYS_IMPORTANT, 0.10),
    (PreferenceClass.NIGHTS_IMPORTANT, 0.05),
    (PreferenceClass.DAYS_PREFERRED, 0.15),
    (PreferenceClass.NIGHTS_PREFERRED, 0.05),
)

REQUEST_GRADE_WEIGHTS = (0.35, 0.25, 0.20, 0.12, 0.08)
# share of each grade's cumulative cover that becomes demand
GRADE_DEMAND_SHARE = (0.6, 0.8, 1.0)


@dataclass(frozen=True)
class NurseGenSpec:
    n_nurses: int = 25
    grade_mix: tuple[float, float, float] = (0.2, 0.3, 0.5)
    contracts: tuple[tuple[tuple[int, int, int | None], float], ...] = DEFAULT_CONTRACTS
    preferences: tuple[tuple[PreferenceClass, float], ...] = DEFAULT_PREFERENCES
    variant: CostVariant = CostVariant.STRUCTURED
    max_requests: int = 3
    head_nurses: int = 0
    teams: int = 0
    name: str | None = None

    def problems(self) -> list[str]:
        found = []
        if self.n_nurses < 2:
            found.append(f"n_nurses must be at least 2, got {self.n_nurses}")
        if len(self.grade_mix) != N_GRADES or abs(sum(self.grade_mix) - 1.0) > 1e-6:
            found.append("grade_mix must hold three shares summing to 1")
        if not self.contracts:
            found.append("contracts must not be empty")
        return found


def _pick(rng: np.random.Generator, options, weights):
    weights = np.asarray(weights, dtype=float)
    return options[int(rng.choice(len(options), p=weights / weights.sum()))]


def _preference_for(contract: tuple[int, int, int | None], rng: np.random.Generator, spec: NurseGenSpec) -> PreferenceClass:
    days, nights, combined = contract
    if combined is not None:
        return PreferenceClass.NEUTRAL
    options = [p for p, _ in spec.preferences]
    weights = [w for _, w in spec.preferences]
    preference = _pick(rng, options, weights)
    if preference is PreferenceClass.NIGHTS_ONLY and nights == 0:
        return PreferenceClass.NEUTRAL
    return preference


def _requests(rng: np.random.Generator, max_requests: int) -> tuple[int, ...]:
    requests = [NO_REQUEST] * N_SHIFTS
    count = int(rng.integers(0, max_requests + 1))
    for slot in rng.choice(N_SHIFTS, size=count, replace=False):
        requests[int(slot)] = int(_pick(rng, list(range(1, 6)), REQUEST_GRADE_WEIGHTS))
    return tuple(requests)


def _draw_nurses(spec: NurseGenSpec, rng: np.random.Generator) -> list[NurseSpec]:
    grades = rng.choice(np.arange(1, N_GRADES + 1), size=spec.n_nurses, p=np.asarray(spec.grade_mix))
    grades[:N_GRADES] = np.arange(1, N_GRADES + 1)[: min(N_GRADES, spec.n_nurses)]
    nurses = []
    heads_left = spec.head_nurses
    for i, grade in enumerate(sorted(int(g) for g in grades)):
        contract = _pick(rng, [c for c, _ in spec.contracts], [w for _, w in spec.contracts])
        days, nights, combined = contract
        preference = _preference_for(contract, rng, spec)
        draft = NurseSpec(id=i + 1, grade=grade, days=days, nights=nights, combined=combined, preference=preference)
        patterns = candidate_patterns(draft)
        last = patterns[int(rng.integers(len(patterns)))].bits
        history = NurseHistory(
            last_pattern=last,
            nights_week_before=bool(rng.random() < 0.2),
            last_week_cost=int(rng.integers(1, 6)) if rng.random() < 0.3 else 0,
        )
        is_head = grade == 1 and heads_left > 0
        heads_left -= int(is_head)
        nurses.append(NurseSpec(
            id=i + 1,
            grade=grade,
            days=days,
            nights=nights,
            combined=combined,
            preference=preference,
            requests=_requests(rng, spec.max_requests),
            history=history,
            is_head=is_head,
            team=(i % spec.teams) if spec.teams else None,
        ))
    return nurses


def _demand_from_sample(nurses: list[NurseSpec], rng: np.random.Generator) -> np.ndarray:
    """Cumulative demand that one random roster of these nurses meets exactly at the aggregate level."""
    provided = np.zeros((N_SHIFTS, N_GRADES), dtype=np.int64)
    for nurse in nurses:
        patterns = candidate_patterns(nurse)
        bits = np.array(patterns[int(rng.integers(len(patterns)))].bits, dtype=np.int64)
        for s in range(nurse.grade - 1, N_GRADES):
            provided[:, s] += bits
    demand = np.floor(provided * np.asarray(GRADE_DEMAND_SHARE)[None, :]).astype(np.int64)
    demand[:, N_GRADES - 1] = provided[:, N_GRADES - 1]
    return np.maximum.accumulate(demand, axis=1)


def generate_nurse_instance(spec: NurseGenSpec, seed: int) -> NurseInstance:
    """
    Draw a ward, derive a coverable demand, smooth it and build the costs.

    Raises:
        InfeasibleSpecError: no coverable instance within the retry budget
    """
    problems = spec.problems()
    if problems:
        raise InfeasibleSpecError("; ".join(problems))

    rng = make_rng(seed)
    name = spec.name or f"nurse-{spec.variant.value}-{seed}"
    last_error = "no attempt made"
    for attempt in range(MAX_ATTEMPTS):
        nurses = _draw_nurses(spec, rng)
        smoothing = knapsack_smooth(_demand_from_sample(nurses, rng), nurses)
        if smoothing.night_shortfall:
            last_error = f"night shortfall of {smoothing.night_shortfall}"
            continue
        everyone = nurses + smoothing.extra_nurses
        if spec.variant is CostVariant.RANDOM:
            builder = partial(random_pij, rng=rng)
        else:
            builder = partial(build_pij, variant=spec.variant)
        try:
            instance = NurseInstance.build(everyone, smoothing.demand, name=name, cost_builder=builder)
        except InstanceValidationError as e:
            last_error = e.message
            continue
        logger.info(f"generated {name}: {len(instance)} nurses after {attempt + 1} attempt(s)")
        return instance
    raise InfeasibleSpecError(f"could not generate {name} in {MAX_ATTEMPTS} attempts: {last_error}")


MICRO_CONTRACTS = (
    (1, 1, PreferenceClass.DAYS_ONLY),
    (1, 1, PreferenceClass.NIGHTS_ONLY),
    (6, 6, PreferenceClass.DAYS_ONLY),
    (6, 6, PreferenceClass.NIGHTS_ONLY),
)


def micro_instance(n_nurses: int, seed: int) -> NurseInstance:
    """
    A tiny instance for exhaustive checks: every nurse has seven patterns,
    costs are random and one random roster meets the aggregate demand.
    """
    rng = make_rng(seed)
    nurses = []
    for i in range(n_nurses):
        days, nights, preference = MICRO_CONTRACTS[int(rng.integers(len(MICRO_CONTRACTS)))]
        nurses.append(NurseSpec(
            id=i + 1,
            grade=int(rng.integers(1, N_GRADES + 1)),
            days=days,
            nights=nights,
            preference=preference,
        ))
    demand = _demand_from_sample(nurses, rng)
    costs = {
        nurse.id: [int(c) for c in rng.integers(0, 30, size=len(candidate_patterns(nurse)))]
        for nurse in nurses
    }
    return NurseInstance.build(nurses, demand, costs=costs, name=f"micro-{seed}")
