"""
Result files: ``summary.csv``, ``runs.csv`` and, on request,
``convergence.csv`` under the output directory, plus one JSON solution file
per instance for the best solution found.

CSV files are appended to, so repeated invocations with different
algorithms build up one comparison table.
"""
import logging
from dataclasses import asdict, replace
from pathlib import Path

from ..core.config.load_config import Config
from ..ga.tracking import SolutionRecord
from ..mall.evaluate import evaluate_layout
from ..mall.instance_io import save_mall_solution
from ..mall.instance_io import solution_file as mall_solution_file
from ..nurse.instance_io import save_nurse_solution
from ..nurse.instance_io import solution_file as nurse_solution_file
from ..utils.CsvHandler import CsvHandler
from .experiment import ExperimentResult, InstanceHandle
from .records import ConvergenceRow, RunRecord, SummaryRow

logger = logging.getLogger(__name__)

SUMMARY_CSV = "summary.csv"
RUNS_CSV = "runs.csv"
CONVERGENCE_CSV = "convergence.csv"


def summary_rows(result: ExperimentResult) -> list[SummaryRow]:
    return [
        SummaryRow(
            algorithm=algorithm,
            instance_set=instance_set,
            n_instances=stats.n_instances,
            runs=stats.runs,
            feasibility=stats.feasibility,
            cost_or_rent=stats.cost_or_rent,
            uncensored_mean=stats.uncensored_mean,
            mean_seconds=stats.mean_seconds,
        )
        for (algorithm, instance_set), stats in result.stats.items()
    ]


def _blank_none(row: dict) -> dict:
    # 空值写成空串, 与 check_csv 的填充值一致
    return {k: ("" if v is None else v) for k, v in row.items()}


def emit_outputs(result: ExperimentResult, config: Config, out_dir: str | Path | None = None) -> list[Path]:
    """Append summary, per-run and (optionally) convergence rows; returns the files written."""
    out = Path(out_dir or config.output.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    written = []
    summary_path = out / SUMMARY_CSV
    CsvHandler.save_rows_to_csv(summary_path, [_blank_none(asdict(r)) for r in summary_rows(result)], SummaryRow)
    written.append(summary_path)

    runs_path = out / RUNS_CSV
    CsvHandler.save_rows_to_csv(runs_path, [_blank_none(asdict(r)) for r in result.records], RunRecord)
    written.append(runs_path)

    if config.output.convergence and result.convergence:
        convergence_path = out / CONVERGENCE_CSV
        CsvHandler.save_rows_to_csv(
            convergence_path, [_blank_none(asdict(r)) for r in result.convergence], ConvergenceRow
        )
        written.append(convergence_path)

    logger.info(f"wrote {', '.join(p.name for p in written)} to {out}")
    return written


def save_best_solution(
    problem: str,
    handle: InstanceHandle,
    best: SolutionRecord,
    directory: str | Path,
    config: Config,
) -> Path:
    path = Path(directory) / f"{handle.name}.solution.json"
    if problem == "mall":
        evaluation = evaluate_layout(best.solution, handle.instance, 0.0, rent_scale=config.mall.rent_scale)
        evaluation = replace(evaluation, fitness=best.fitness)
        return save_mall_solution(mall_solution_file(handle.instance, best.solution, evaluation), path)
    solution = nurse_solution_file(handle.instance, best.solution, best.objective, int(best.violation), best.fitness)
    return save_nurse_solution(solution, path)


def save_best_solutions(result: ExperimentResult, config: Config, directory: str | Path | None = None) -> list[Path]:
    directory = directory or config.output.save_best
    if not directory:
        return []
    paths = [
        save_best_solution(result.problem, handle, best, directory, config)
        for handle, best in result.best.values()
    ]
    logger.info(f"saved {len(paths)} best solutions to {directory}")
    return paths
