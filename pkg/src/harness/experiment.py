"""
Batch runs over instance sets.

Every (instance, run) pair gets its own seed from
``derive_seed(base_seed, instance name, run)``, never from the algorithm, so
compared algorithms start from the same random stream. Runs are independent
and may be fanned out over worker processes; results are always reduced in
(instance, run) order.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Mapping

from ..core.config._get_value import get_value_or_default, parse_bool
from ..core.config.load_config import Config
from ..core.errors import InstanceValidationError
from ..ga.engine import GaConfig, run
from ..ga.tracking import RunResult, SolutionRecord
from ..mall.generator import generate_instance, generate_linked
from ..mall.instance_io import load_mall_instance
from ..mall.solvers import (
    MallCoevolutionProblem,
    MallDirectProblem,
    MallIndirectOptions,
    MallIndirectProblem,
    MallOptions,
)
from ..nurse.costs import CostVariant
from ..nurse.direct import CoevolutionProblem, DirectOptions, NurseDirectProblem, run_delta
from ..nurse.generator import NurseGenSpec, generate_nurse_instance
from ..nurse.indirect import IndirectOptions, NurseIndirectProblem
from ..nurse.instance_io import load_nurse_instance
from ..utils.seed_generator import derive_seed
from .aggregate import AggregateStats, aggregate_by_set
from .records import ConvergenceRow, RunRecord

logger = logging.getLogger(__name__)

MAIN_SUBPOP = 7


@dataclass(frozen=True)
class InstanceHandle:
    name: str
    instance_set: str
    instance: Any # NurseInstance 或 MallInstance


@dataclass(frozen=True)
class RunTask:
    handle: InstanceHandle
    config: Config
    run: int
    seed: int


@dataclass(frozen=True)
class RunOutcome:
    record: RunRecord
    convergence: list[ConvergenceRow]
    best: SolutionRecord


@dataclass
class ExperimentResult:
    problem: str
    records: list[RunRecord]
    convergence: list[ConvergenceRow]
    stats: dict[tuple[str, str], AggregateStats]
    best: dict[str, tuple[InstanceHandle, SolutionRecord]] = field(default_factory=dict)


# ---------- instances ----------

def load_instance_file(problem: str, path: str | Path):
    return load_mall_instance(path) if problem == "mall" else load_nurse_instance(path)


def generate_instances(problem: str, spec: Mapping[str, Any]) -> list[InstanceHandle]:
    """
    Generator spec keys: ``count`` and ``seed``; for mall ``set`` (1-7) or
    ``linked: true`` for set 4-7 quadruples; for nurse ``variant``,
    ``n_nurses``, ``head_nurses`` and ``teams``.
    """
    count = int(get_value_or_default(spec, "count", 1))
    seed = int(get_value_or_default(spec, "seed", 0))
    handles = []
    if problem == "mall":
        if parse_bool(get_value_or_default(spec, "linked", False)):
            for c in range(count):
                for set_id, instance in generate_linked(seed + c).items():
                    handles.append(InstanceHandle(instance.name, f"set{set_id}", instance))
        else:
            set_id = int(get_value_or_default(spec, "set", 4))
            for c in range(count):
                instance = generate_instance(set_id, seed + c)
                handles.append(InstanceHandle(instance.name, f"set{set_id}", instance))
        return handles

    variant = CostVariant(str(get_value_or_default(spec, "variant", "structured")))
    for c in range(count):
        gen_spec = NurseGenSpec(
            n_nurses=int(get_value_or_default(spec, "n_nurses", 25)),
            variant=variant,
            head_nurses=int(get_value_or_default(spec, "head_nurses", 0)),
            teams=int(get_value_or_default(spec, "teams", 0)),
        )
        instance = generate_nurse_instance(gen_spec, seed + c)
        handles.append(InstanceHandle(instance.name, f"nurse-{variant.value}", instance))
    return handles


def load_instances(config: Config) -> list[InstanceHandle]:
    """
    Instance files and directories (every ``*.json`` inside, sorted) from
    the config, then generated instances.

    Raises:
        InstanceValidationError: no instances, or an instance fails validation
    """
    problem = config.experiment.problem
    handles = []
    for entry in config.experiment.instances:
        path = Path(entry)
        files = sorted(path.glob("*.json")) if path.is_dir() else [path]
        instance_set = path.name if path.is_dir() else (path.parent.name or "default")
        for file in files:
            instance = load_instance_file(problem, file)
            handles.append(InstanceHandle(instance.name, instance_set, instance))
    if config.experiment.generate:
        handles += generate_instances(problem, config.experiment.generate)
    if not handles:
        raise InstanceValidationError("experiment", ["no instances given: set experiment.instances or experiment.generate"])
    return handles


# ---------- solvers ----------

def build_runner(handle: InstanceHandle, config: Config) -> Callable[[int], RunResult]:
    """A function from seed to ``RunResult`` for the configured problem and algorithm."""
    problem, algorithm = config.experiment.problem, config.experiment.algorithm
    ga_config = GaConfig.from_settings(config.ga, config.penalty)
    instance = handle.instance

    if problem == "nurse":
        settings = config.nurse
        if algorithm == "indirect":
            binding = NurseIndirectProblem(instance, IndirectOptions.from_settings(settings))
        elif algorithm == "direct":
            binding = NurseDirectProblem(instance, DirectOptions.from_settings(settings, algorithm))
        else:
            ga_config = replace(ga_config, population_size=settings.subpop_sizes[MAIN_SUBPOP])

            def factory() -> CoevolutionProblem:
                return CoevolutionProblem.from_settings(instance, settings, algorithm)

            if algorithm == "delta":
                return lambda seed: run_delta(factory, ga_config, seed, settings.delta_levels, settings.delta_probability)
            binding = factory()
    else:
        settings = config.mall
        if algorithm == "indirect":
            binding = MallIndirectProblem(instance, MallIndirectOptions.from_settings(settings))
        elif algorithm == "direct":
            binding = MallDirectProblem(instance, MallOptions.from_settings(settings))
        else:
            ga_config = replace(ga_config, population_size=settings.main_pop_size)
            binding = MallCoevolutionProblem.from_settings(instance, settings, algorithm)

    return lambda seed: run(binding, ga_config, seed)


def _better(problem: str, a: SolutionRecord | None, b: SolutionRecord) -> bool:
    """True when ``b`` beats ``a``: feasible first, then objective, then fitness."""
    if a is None:
        return True
    if a.feasible != b.feasible:
        return b.feasible
    maximize = problem == "mall"
    key_a, key_b = (a.objective, b.objective) if a.feasible else (a.fitness, b.fitness)
    return key_b > key_a if maximize else key_b < key_a


def run_single(task: RunTask) -> RunOutcome:
    handle, config = task.handle, task.config
    algorithm = config.experiment.algorithm
    result = build_runner(handle, config)(task.seed)
    best = result.best_feasible or result.best_overall
    record = RunRecord(
        algorithm=algorithm,
        instance_set=handle.instance_set,
        instance=handle.name,
        run=task.run,
        seed=str(task.seed),
        best_objective=result.best_feasible.objective if result.best_feasible else None,
        best_fitness=result.best_overall.fitness,
        feasible=result.feasible,
        generations=result.generations,
        seconds=result.wall_time,
        monotonicity_violations=result.monotonicity_violations,
        size_violations=result.size_violations,
    )
    convergence = []
    if config.output.convergence:
        convergence = [
            ConvergenceRow(
                algorithm=algorithm,
                instance=handle.name,
                run=task.run,
                generation=stats.generation,
                best_fitness=stats.best_fitness,
                mean_fitness=stats.mean_fitness,
                weight=stats.weight,
                best_feasible_objective=stats.best_feasible_objective,
            )
            for stats in result.trace
        ]
    return RunOutcome(record=record, convergence=convergence, best=best)


def make_tasks(handles: list[InstanceHandle], config: Config) -> list[RunTask]:
    exp = config.experiment
    return [
        RunTask(handle=handle, config=config, run=r, seed=derive_seed(exp.base_seed, handle.name, r))
        for handle in handles
        for r in range(exp.runs_per_instance)
    ]


def run_experiment(
    config: Config,
    handles: list[InstanceHandle] | None = None,
    workers: int | None = None,
) -> ExperimentResult:
    """
    Run every instance ``runs_per_instance`` times and aggregate.

    Raises:
        InstanceValidationError: instances fail to load or validate
    """
    exp = config.experiment
    handles = handles if handles is not None else load_instances(config)
    workers = workers or exp.workers
    tasks = make_tasks(handles, config)
    logger.info(
        f"running {exp.problem}/{exp.algorithm}: {len(handles)} instances x {exp.runs_per_instance} runs, "
        f"{workers} worker(s)"
    )

    try:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(run_single, tasks))
        else:
            outcomes = [run_single(task) for task in tasks]
    except Exception as e:
        logger.error(f"experiment {exp.problem}/{exp.algorithm} failed: {e}", exc_info=True)
        raise

    records = [o.record for o in outcomes]
    convergence = [row for o in outcomes for row in o.convergence]
    best: dict[str, tuple[InstanceHandle, SolutionRecord]] = {}
    for task, outcome in zip(tasks, outcomes):
        current = best.get(task.handle.name)
        if current is None or _better(exp.problem, current[1], outcome.best):
            best[task.handle.name] = (task.handle, outcome.best)

    stats = aggregate_by_set(records, exp.problem)
    for (algorithm, instance_set), s in stats.items():
        logger.info(
            f"{algorithm} on {instance_set}: feasibility {s.feasibility:.3f}, "
            f"censored mean {s.cost_or_rent:.3f} over {s.n_solved}/{s.n_instances} solved"
        )
    return ExperimentResult(problem=exp.problem, records=records, convergence=convergence, stats=stats, best=best)
