"""
Delta-coded restarts around the best roster found so far.

After a normal run, the search restarts several times. Each restart seeds
the population with rosters that copy the incumbent except for a few genes,
which move to a pattern at most ``level`` shifts away. Levels shrink from
coarse to fine.
"""
import logging
import time
from typing import Callable, Sequence

import numpy as np

from ...core.errors import GaConfigurationError
from ...ga.engine import GaConfig, run
from ...ga.tracking import RunResult, SolutionRecord
from ...utils.seed_generator import make_rng
from ..models import NurseInstance, Roster
from .solver import NurseDirectProblem
from .swaps import NurseNeighbourhood

logger = logging.getLogger(__name__)

DEFAULT_LEVELS = (5, 4, 3, 2, 1)


def delta_restart(
    best: Sequence[int],
    level: int,
    p_dc: float,
    instance: NurseInstance,
    rng: np.random.Generator,
    size: int,
    neighbourhood: NurseNeighbourhood | None = None,
) -> list[Roster]:
    """
    ``size`` rosters near ``best``: each gene keeps the incumbent's pattern
    with probability ``1 - p_dc``, otherwise takes a neighbour 1..level moves
    away within the nurse's feasible set. A gene without such a neighbour
    draws from the whole feasible set.

    Raises:
        GaConfigurationError: level < 1 or p_dc outside [0, 1]
    """
    if level < 1:
        raise GaConfigurationError("nurse.delta_levels", f"level must be >= 1, got {level}")
    if not 0.0 <= p_dc <= 1.0:
        raise GaConfigurationError("nurse.delta_probability", f"must be in [0, 1], got {p_dc}")
    neighbourhood = neighbourhood or NurseNeighbourhood(instance)
    options = []
    for i, j in enumerate(best):
        near = neighbourhood.within(i, int(j), level)
        options.append(near if near else list(instance.feasible[i]))

    rosters = []
    for _ in range(size):
        moves = rng.random(len(best)) < p_dc
        roster = tuple(
            int(options[i][int(rng.integers(len(options[i])))]) if moves[i] else int(j)
            for i, j in enumerate(best)
        )
        rosters.append(roster)
    return rosters


def _better(a: SolutionRecord | None, b: SolutionRecord | None, by_objective: bool) -> SolutionRecord | None:
    if a is None:
        return b
    if b is None:
        return a
    key = (lambda r: r.objective) if by_objective else (lambda r: r.fitness)
    return b if key(b) < key(a) else a


def run_delta(
    problem_factory: Callable[[], NurseDirectProblem],
    config: GaConfig,
    seed: int,
    levels: Sequence[int] = DEFAULT_LEVELS,
    p_dc: float = 0.1,
) -> RunResult:
    """
    One standard run followed by a restart per level, each seeded around the
    best roster so far. The result merges all stages: best solutions across
    stages, summed generations and counters, and the concatenated trace.
    """
    started = time.perf_counter()
    seeds = make_rng(seed)
    problem = problem_factory()
    result = run(problem, config, seed)
    best_feasible, best_overall = result.best_feasible, result.best_overall
    generations = result.generations
    trace = list(result.trace)
    monotonicity, sizes = result.monotonicity_violations, result.size_violations
    hashes = list(result.population_hashes)
    diagnostics = dict(result.diagnostics)

    for level in levels:
        incumbent = (best_feasible or best_overall).genotype
        stage = problem_factory()
        stage.seed_pool = delta_restart(
            incumbent, level, p_dc, stage.instance, seeds, config.population_size - 1, stage.neighbourhood,
        ) + [tuple(incumbent)]
        stage_seed = int(seeds.integers(0, 2**63 - 1))
        result = run(stage, config, stage_seed)
        logger.debug(
            f"delta level {level}: {result.generations} generations, "
            f"best feasible={result.best_feasible.objective if result.best_feasible else None}"
        )
        best_feasible = _better(best_feasible, result.best_feasible, by_objective=True)
        best_overall = _better(best_overall, result.best_overall, by_objective=False)
        generations += result.generations
        trace += result.trace
        monotonicity += result.monotonicity_violations
        sizes += result.size_violations
        hashes += result.population_hashes
        for key, value in result.diagnostics.items():
            diagnostics[key] = diagnostics.get(key, 0) + value
        diagnostics["delta_restarts"] = diagnostics.get("delta_restarts", 0) + 1

    return RunResult(
        best_feasible=best_feasible,
        best_overall=best_overall,
        generations=generations,
        wall_time=time.perf_counter() - started,
        trace=trace,
        monotonicity_violations=monotonicity,
        size_violations=sizes,
        population_hashes=hashes,
        diagnostics=diagnostics,
    )
