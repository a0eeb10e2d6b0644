"""
garoster command line.

    garoster solve    --problem nurse|mall --instances DIR ... | --generate SPEC --algo NAME
    garoster gen      --problem mall --set 4 --count 10 --seed 1 [--linked]
    garoster gen      --problem nurse --variant structured|random|highcost --count 5 --seed 1
    garoster validate FILE
    garoster bound    FILE

Flags override the config file, which overrides solver defaults. Exit code
is 0 on success and 2 when an instance or config fails validation.
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Sequence

import pandas as pd
import yaml
from pydantic import ValidationError

from .core.config._get_value import Invalid_config_exception, Miss_key_exception, parse_bool
from .core.config.load_config import apply_overrides, parse_config, read_row_config
from .core.config.load_env_config import load_env_config
from .core.errors import GaConfigurationError, InstanceValidationError
from .harness.experiment import generate_instances, run_experiment
from .harness.outputs import emit_outputs, save_best_solutions, summary_rows
from .mall.evaluate import upper_bound
from .mall.instance_io import load_mall_instance, save_mall_instance
from .nurse.instance_io import load_nurse_instance, save_nurse_instance
from .utils.logging_config import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
DEFAULT_CONFIG = "config.yaml"
# 实例或配置校验失败, 退出码 2
VALIDATION_ERRORS = (
    InstanceValidationError,
    ValidationError,
    Invalid_config_exception,
    Miss_key_exception,
    GaConfigurationError,
)


def on_off(value: str) -> bool:
    try:
        return parse_bool(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def parse_generate(value: str | None) -> dict[str, Any] | None:
    """
    ``--generate`` takes ``key=value`` pairs (``set=4,count=10,seed=1``) or a
    YAML/JSON file holding the same mapping.
    """
    if not value:
        return None
    if Path(value).suffix in (".yaml", ".yml", ".json") and Path(value).exists():
        return read_row_config(value)
    spec = {}
    for pair in value.split(","):
        key, sep, raw = pair.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected key=value, got {pair!r}")
        spec[key.strip()] = yaml.safe_load(raw.strip())
    return spec


def detect_problem(path: str | Path) -> str:
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    return "nurse" if isinstance(data, dict) and "nurses" in data else "mall"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="garoster",
        description="Genetic algorithms for nurse rostering and mall tenant selection",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--env", default=".env", help="dotenv file with LOG_LEVEL, LOG_DIR, LOG_TO_CONSOLE, WORKERS")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run an experiment and write summary.csv / runs.csv")
    solve.add_argument("--config", default=None, help=f"experiment config (default: {DEFAULT_CONFIG} when present)")
    solve.add_argument("--problem", choices=("nurse", "mall"))
    solve.add_argument("--instances", nargs="+", help="instance files or directories of *.json")
    solve.add_argument("--generate", type=parse_generate, help="generator spec, e.g. set=4,count=10,seed=1")
    solve.add_argument("--algo", help="solver, e.g. direct, coevo, coevo-repair, delta, indirect")
    solve.add_argument("--runs", type=int, help="runs per instance")
    solve.add_argument("--seed", type=int, help="base seed")
    solve.add_argument("--out", help="output directory for the CSV files")
    solve.add_argument("--workers", type=int, help="worker processes")
    solve.add_argument("--save-best", help="directory for best solution files")
    solve.add_argument("--convergence", action="store_true", default=None, help="also write convergence.csv")
    solve.add_argument("--penalty", help="penalty strategy: static, smith, reverse_hadj, hadj, dual")
    # nurse indirect
    solve.add_argument("--decoder", choices=("highest", "overall", "combined"))
    solve.add_argument("--order", choices=("lowday", "rand", "biased", "cheapest", "randcost"))
    solve.add_argument("--bound", type=on_off, help="simple bound on|off")
    solve.add_argument("--adaptive", type=on_off, help="adaptive cover weights on|off (nurse indirect)")
    # mall indirect
    solve.add_argument("--weights", choices=("low", "medium", "high", "auto"))
    solve.add_argument("--adaptive-crossover", type=on_off)
    solve.add_argument("--adaptive-mutation", type=on_off)

    gen = sub.add_parser("gen", help="generate instance files")
    gen.add_argument("--problem", choices=("nurse", "mall"), required=True)
    gen.add_argument("--set", type=int, default=4, help="mall instance set 1-7")
    gen.add_argument("--linked", action="store_true", help="mall: linked quadruples over sets 4-7")
    gen.add_argument("--variant", choices=("structured", "random", "highcost"), default="structured")
    gen.add_argument("--n-nurses", type=int, default=25)
    gen.add_argument("--head-nurses", type=int, default=0)
    gen.add_argument("--teams", type=int, default=0)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="data/instances")

    validate = sub.add_parser("validate", help="check an instance file")
    validate.add_argument("file")

    bound = sub.add_parser("bound", help="rent upper bound of a mall instance")
    bound.add_argument("file")
    return parser


def solve_overrides(args: argparse.Namespace, problem: str | None) -> dict[str, Any]:
    overrides = {
        "experiment.problem": args.problem,
        "experiment.algorithm": args.algo,
        "experiment.instances": args.instances,
        "experiment.generate": args.generate,
        "experiment.runs_per_instance": args.runs,
        "experiment.base_seed": args.seed,
        "experiment.workers": args.workers,
        "output.out_dir": args.out,
        "output.save_best": args.save_best,
        "output.convergence": args.convergence,
        "penalty.strategy": args.penalty,
        "nurse.decoder": args.decoder,
        "nurse.order": args.order,
        "nurse.bound": args.bound,
        "nurse.adaptive": args.adaptive,
        "mall.weights": args.weights,
        "mall.adaptive_mutation": args.adaptive_mutation,
    }
    section = "nurse" if problem == "nurse" else "mall"
    overrides[f"{section}.adaptive_crossover"] = args.adaptive_crossover
    return overrides


def cmd_solve(args: argparse.Namespace, env_workers: int) -> int:
    config_path = args.config or os.getenv("CONFIG_PATH", DEFAULT_CONFIG)
    if args.config is not None or Path(config_path).exists():
        row_config = read_row_config(config_path)
    else:
        row_config = {}
    problem = args.problem or (row_config.get("experiment") or {}).get("problem")
    row_config = apply_overrides(row_config, solve_overrides(args, problem))
    experiment_row = row_config.setdefault("experiment", {})
    experiment_row.setdefault("workers", env_workers)

    config = parse_config(row_config)
    result = run_experiment(config)
    emit_outputs(result, config)
    save_best_solutions(result, config)

    table = pd.DataFrame([vars(row) for row in summary_rows(result)])
    print(table.to_string(index=False))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.problem == "mall":
        spec = {"set": args.set, "count": args.count, "seed": args.seed, "linked": args.linked}
    else:
        spec = {
            "variant": args.variant, "count": args.count, "seed": args.seed,
            "n_nurses": args.n_nurses, "head_nurses": args.head_nurses, "teams": args.teams,
        }
    save = save_mall_instance if args.problem == "mall" else save_nurse_instance
    for handle in generate_instances(args.problem, spec):
        path = save(handle.instance, Path(args.out) / handle.instance_set / f"{handle.name}.json")
        print(path)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    problem = detect_problem(args.file)
    instance = load_mall_instance(args.file) if problem == "mall" else load_nurse_instance(args.file)
    print(f"{args.file}: valid {problem} instance {instance.name}")
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    instance = load_mall_instance(args.file)
    print(f"{upper_bound(instance):.0f}")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    env = load_env_config(args.env)
    setup_logging(
        command=args.command,
        log_dir=env.LOG_DIR,
        log_level=env.LOG_LEVEL,
        console=env.LOG_TO_CONSOLE,
    )

    try:
        if args.command == "solve":
            return cmd_solve(args, env.WORKERS)
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "validate":
            return cmd_validate(args)
        return cmd_bound(args)
    except VALIDATION_ERRORS as e:
        logger.error(f"{args.command} failed validation: {e}", exc_info=True)
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        raise


if __name__ == "__main__":
    sys.exit(main())
