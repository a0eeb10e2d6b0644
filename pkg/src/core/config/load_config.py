import copy
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping

import yaml

from ._get_value import (
    Invalid_config_exception,
    check_range,
    get_value_from_dict,
    get_value_or_default,
    parse_bool,
)

NURSE_ALGORITHMS = ("direct", "coevo", "coevo-repair", "delta", "indirect")
MALL_ALGORITHMS = ("direct", "coevo", "coevo-mate", "coevo-repair", "indirect")
PENALTY_STRATEGIES = ("static", "smith", "reverse_hadj", "hadj", "dual")
VALUE_CROSSOVERS = ("param_uniform", "kpoint")
PERMUTATION_CROSSOVERS = ("pux", "c1", "pmx", "order_based")
MUTATIONS = ("single_gene", "swap", "scramble")


@dataclass(frozen=True)
class GaSettings:
    population_size: int
    elite_fraction: float
    stop_stagnation: int
    max_generations: int
    per_gene_mutation_rate: float
    crossover: str
    crossover_p: float
    crossover_k: int
    parents_per_crossover: int
    mutation: str
    dedupe: bool
    seeding: str

@dataclass(frozen=True)
class PenaltySettings:
    strategy: str
    static_w: float
    alpha: float
    nu: float
    high: float
    low: float
    severity: float
    quadratic: bool

@dataclass(frozen=True)
class NurseSettings:
    decoder: str
    order: str
    bound: bool
    boundary_operators: bool
    adaptive: bool
    adaptive_crossover: bool
    cover_weights: tuple[float, float, float]
    preference_weight: float
    inheritance: str
    subpop_sizes: tuple[int, ...]
    grade_based_share: float
    migration: str
    migration_rate: float
    migration_every: int
    migration_k: int
    swaps: bool
    swap_top_k: int
    chain_max_cycle: int
    incentive: float
    disincentive: float
    repair_top_k: int
    delta_levels: tuple[int, ...]
    delta_probability: float
    extensions: bool
    w_head: float
    w_team: float
    grade_sorted_seed: bool

@dataclass(frozen=True)
class MallSettings:
    weights: str
    adaptive_crossover: bool
    adaptive_mutation: bool
    weight_range: float
    inheritance: str
    area_pop_size: int
    main_pop_size: int
    mate_candidates: int
    repair_probability: float
    rent_scale: float

@dataclass(frozen=True)
class ExperimentSettings:
    problem: str
    algorithm: str
    runs_per_instance: int
    base_seed: int
    instances: List[str]
    generate: Dict[str, Any] | None
    workers: int

@dataclass(frozen=True)
class OutputSettings:
    out_dir: str
    convergence: bool
    save_best: str | None

@dataclass(frozen=True)
class Config:
    experiment: ExperimentSettings
    ga: GaSettings
    penalty: PenaltySettings
    nurse: NurseSettings
    mall: MallSettings
    output: OutputSettings = field(default_factory=lambda: OutputSettings("data/results", False, None))


# ---------- 各求解器的默认 GA 参数 ----------

def default_ga_settings(problem: str, algorithm: str) -> GaSettings:
    """
    Return the tuned GA defaults for one (problem, algorithm) pair.

    Elite 10%, stagnation 30 and mutation 1.5% are shared; population size and
    crossover depend on the encoding.
    """
    indirect = algorithm == "indirect"
    if indirect:
        size, crossover, p, parents, mutation = 100, "pux", 0.66, 2, "swap"
    elif problem == "nurse":
        size, crossover, p, parents, mutation = 1000, "param_uniform", 0.8, 4, "single_gene"
    else:
        size, crossover, p, parents, mutation = 200, "param_uniform", 0.66, 2, "single_gene"
    return GaSettings(
        population_size=size,
        elite_fraction=0.10,
        stop_stagnation=30,
        max_generations=1000,
        per_gene_mutation_rate=0.015,
        crossover=crossover,
        crossover_p=p,
        crossover_k=2,
        parents_per_crossover=parents,
        mutation=mutation,
        dedupe=True,
        seeding="random",
    )

def default_penalty_settings(problem: str) -> PenaltySettings:
    if problem == "mall":
        return PenaltySettings("static", 30.0, 8.0, 5.0, 50.0, 5.0, 1.0, False)
    return PenaltySettings("smith", 20.0, 8.0, 5.0, 50.0, 5.0, 1.0, False)


# ---------- parse_config（核心纯逻辑）----------

def read_row_config(config_path: str) -> Dict[str, Any]:
    """Read YAML (or JSON, which YAML accepts verbatim) into a plain dict."""
    with open(config_path, "r", encoding="utf-8") as f:
        row_config = yaml.safe_load(f)
    return row_config or {}

def _parse_experiment(row: Mapping[str, Any]) -> ExperimentSettings:
    problem = check_range(
        "experiment.problem", get_value_from_dict(row, "problem"),
        lambda v: v in ("nurse", "mall"), "expected nurse or mall",
    )
    algorithms = NURSE_ALGORITHMS if problem == "nurse" else MALL_ALGORITHMS
    algorithm = check_range(
        "experiment.algorithm", get_value_from_dict(row, "algorithm"),
        lambda v: v in algorithms, f"expected one of {algorithms}",
    )
    instances = get_value_or_default(row, "instances", [])
    if isinstance(instances, str):
        instances = [instances]
    return ExperimentSettings(
        problem=problem,
        algorithm=algorithm,
        runs_per_instance=check_range(
            "experiment.runs_per_instance", int(get_value_or_default(row, "runs_per_instance", 20)),
            lambda v: v >= 1, "must be at least 1",
        ),
        base_seed=int(get_value_or_default(row, "base_seed", 12345)),
        instances=[str(p) for p in instances],
        generate=get_value_or_default(row, "generate", None),
        workers=int(get_value_or_default(row, "workers", 1)),
    )

def _parse_ga(row: Mapping[str, Any] | None, defaults: GaSettings) -> GaSettings:
    row = row or {}
    crossover = row.get("crossover", {}) or {}
    if isinstance(crossover, str):
        crossover = {"operator": crossover}

    ga = GaSettings(
        population_size=int(get_value_or_default(row, "population_size", defaults.population_size)),
        elite_fraction=float(get_value_or_default(row, "elite_fraction", defaults.elite_fraction)),
        stop_stagnation=int(get_value_or_default(row, "stop_stagnation", defaults.stop_stagnation)),
        max_generations=int(get_value_or_default(row, "max_generations", defaults.max_generations)),
        per_gene_mutation_rate=float(get_value_or_default(row, "per_gene_mutation_rate", defaults.per_gene_mutation_rate)),
        crossover=str(get_value_or_default(crossover, "operator", defaults.crossover)),
        crossover_p=float(get_value_or_default(crossover, "p", defaults.crossover_p)),
        crossover_k=int(get_value_or_default(crossover, "k", defaults.crossover_k)),
        parents_per_crossover=int(get_value_or_default(row, "parents_per_crossover", defaults.parents_per_crossover)),
        mutation=str(get_value_or_default(row, "mutation", defaults.mutation)),
        dedupe=parse_bool(get_value_or_default(row, "dedupe", defaults.dedupe)),
        seeding=str(get_value_or_default(row, "seeding", defaults.seeding)),
    )
    return validate_ga_settings(ga)

def validate_ga_settings(ga: GaSettings) -> GaSettings:
    check_range("ga.population_size", ga.population_size, lambda v: v >= 2, "must be at least 2")
    check_range("ga.elite_fraction", ga.elite_fraction, lambda v: 0 < v <= 1, "must be in (0, 1]")
    check_range("ga.stop_stagnation", ga.stop_stagnation, lambda v: v > 0, "must be positive")
    check_range("ga.max_generations", ga.max_generations, lambda v: v > 0, "must be positive")
    check_range("ga.per_gene_mutation_rate", ga.per_gene_mutation_rate, lambda v: 0 <= v <= 1, "must be in [0, 1]")
    check_range("ga.parents_per_crossover", ga.parents_per_crossover, lambda v: v in (2, 3, 4), "must be 2, 3 or 4")
    check_range(
        "ga.crossover", ga.crossover,
        lambda v: v in VALUE_CROSSOVERS + PERMUTATION_CROSSOVERS, "unknown crossover operator",
    )
    check_range("ga.mutation", ga.mutation, lambda v: v in MUTATIONS, f"expected one of {MUTATIONS}")
    check_range("ga.seeding", ga.seeding, lambda v: v in ("random", "best_of_n"), "expected random or best_of_n")
    return ga

def _parse_penalty(row: Mapping[str, Any] | None, defaults: PenaltySettings) -> PenaltySettings:
    row = row or {}
    return PenaltySettings(
        strategy=check_range(
            "penalty.strategy", str(get_value_or_default(row, "strategy", defaults.strategy)),
            lambda v: v in PENALTY_STRATEGIES, f"expected one of {PENALTY_STRATEGIES}",
        ),
        static_w=float(get_value_or_default(row, "static_w", defaults.static_w)),
        alpha=float(get_value_or_default(row, "alpha", defaults.alpha)),
        nu=check_range(
            "penalty.nu", float(get_value_or_default(row, "nu", defaults.nu)),
            lambda v: v > 0, "weight floor must be positive",
        ),
        high=float(get_value_or_default(row, "high", defaults.high)),
        low=float(get_value_or_default(row, "low", defaults.low)),
        severity=float(get_value_or_default(row, "severity", defaults.severity)),
        quadratic=parse_bool(get_value_or_default(row, "quadratic", defaults.quadratic)),
    )

def _parse_nurse(row: Mapping[str, Any] | None) -> NurseSettings:
    row = row or {}
    decoder = check_range(
        "nurse.decoder", str(get_value_or_default(row, "decoder", "combined")),
        lambda v: v in ("highest", "overall", "combined"), "expected highest, overall or combined",
    )
    default_wp = 0.5 if decoder == "combined" else 1.0
    cover = tuple(float(x) for x in get_value_or_default(row, "cover_weights", (8.0, 2.0, 1.0)))
    if len(cover) != 3:
        raise Invalid_config_exception("nurse.cover_weights", cover, "expected three grade weights")
    sizes = tuple(int(x) for x in get_value_or_default(row, "subpop_sizes", (100,) * 7 + (300,)))
    if len(sizes) != 8:
        raise Invalid_config_exception("nurse.subpop_sizes", sizes, "expected eight sub-population sizes")
    return NurseSettings(
        decoder=decoder,
        order=check_range(
            "nurse.order", str(get_value_or_default(row, "order", "cheapest")),
            lambda v: v in ("lowday", "rand", "biased", "cheapest", "randcost"), "unknown search order",
        ),
        bound=parse_bool(get_value_or_default(row, "bound", True)),
        boundary_operators=parse_bool(get_value_or_default(row, "boundary_operators", False)),
        adaptive=parse_bool(get_value_or_default(row, "adaptive", False)),
        adaptive_crossover=parse_bool(get_value_or_default(row, "adaptive_crossover", False)),
        cover_weights=cover,
        preference_weight=float(get_value_or_default(row, "preference_weight", default_wp)),
        inheritance=str(get_value_or_default(row, "inheritance", "rank_weighted_average")),
        subpop_sizes=sizes,
        grade_based_share=float(get_value_or_default(row, "grade_based_share", 0.5)),
        migration=check_range(
            "nurse.migration", str(get_value_or_default(row, "migration", "random")),
            lambda v: v in ("random", "best_k", "none"), "expected random, best_k or none",
        ),
        migration_rate=float(get_value_or_default(row, "migration_rate", 0.05)),
        migration_every=int(get_value_or_default(row, "migration_every", 5)),
        migration_k=int(get_value_or_default(row, "migration_k", 5)),
        swaps=parse_bool(get_value_or_default(row, "swaps", True)),
        swap_top_k=int(get_value_or_default(row, "swap_top_k", 10)),
        chain_max_cycle=int(get_value_or_default(row, "chain_max_cycle", 4)),
        incentive=float(get_value_or_default(row, "incentive", 3.0)),
        disincentive=float(get_value_or_default(row, "disincentive", 3.0)),
        repair_top_k=int(get_value_or_default(row, "repair_top_k", 5)),
        delta_levels=tuple(int(x) for x in get_value_or_default(row, "delta_levels", (5, 4, 3, 2, 1))),
        delta_probability=float(get_value_or_default(row, "delta_probability", 0.1)),
        extensions=parse_bool(get_value_or_default(row, "extensions", False)),
        w_head=float(get_value_or_default(row, "w_head", 5.0)),
        w_team=float(get_value_or_default(row, "w_team", 5.0)),
        grade_sorted_seed=parse_bool(get_value_or_default(row, "grade_sorted_seed", False)),
    )

def _parse_mall(row: Mapping[str, Any] | None) -> MallSettings:
    row = row or {}
    return MallSettings(
        weights=check_range(
            "mall.weights", str(get_value_or_default(row, "weights", "auto")),
            lambda v: v in ("low", "medium", "high", "auto"), "expected low, medium, high or auto",
        ),
        adaptive_crossover=parse_bool(get_value_or_default(row, "adaptive_crossover", False)),
        adaptive_mutation=parse_bool(get_value_or_default(row, "adaptive_mutation", False)),
        weight_range=float(get_value_or_default(row, "weight_range", 10000.0)),
        inheritance=str(get_value_or_default(row, "inheritance", "rank_weighted_average")),
        area_pop_size=int(get_value_or_default(row, "area_pop_size", 25)),
        main_pop_size=int(get_value_or_default(row, "main_pop_size", 75)),
        mate_candidates=int(get_value_or_default(row, "mate_candidates", 10)),
        repair_probability=float(get_value_or_default(row, "repair_probability", 0.5)),
        rent_scale=float(get_value_or_default(row, "rent_scale", 1000.0)),
    )

def parse_config(row_config: Mapping[str, Any]) -> Config:
    experiment = _parse_experiment(get_value_from_dict(row_config, "experiment"))
    ga_defaults = default_ga_settings(experiment.problem, experiment.algorithm)
    output_row = row_config.get("output") or {}

    return Config(
        experiment=experiment,
        ga=_parse_ga(row_config.get("ga"), ga_defaults),
        penalty=_parse_penalty(row_config.get("penalty"), default_penalty_settings(experiment.problem)),
        nurse=_parse_nurse(row_config.get("nurse")),
        mall=_parse_mall(row_config.get("mall")),
        output=OutputSettings(
            out_dir=str(get_value_or_default(output_row, "out_dir", "data/results")),
            convergence=parse_bool(get_value_or_default(output_row, "convergence", False)),
            save_best=get_value_or_default(output_row, "save_best", None),
        ),
    )

def apply_overrides(row_config: Mapping[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """
    Merge CLI flags into a raw config before ``parse_config``.

    Keys are dotted paths such as ``"experiment.algorithm"`` or
    ``"nurse.decoder"``; ``None`` values mean "flag not given". Precedence is
    CLI flag, then config file, then solver default, so overriding the
    algorithm still picks up that algorithm's GA defaults for keys the file
    leaves unset.
    """
    merged = copy.deepcopy(dict(row_config))
    for dotted, value in overrides.items():
        if value is None:
            continue
        section, _, key = dotted.partition(".")
        if not key:
            raise Invalid_config_exception(dotted, value, "override keys must look like section.key")
        target = merged.setdefault(section, {})
        if target is None:
            target = merged[section] = {}
        target[key] = value
    return merged

def load_config(config_path: str = os.getenv("CONFIG_PATH", "config.yaml")) -> Config:
    row_config = read_row_config(config_path)

    return parse_config(row_config)
