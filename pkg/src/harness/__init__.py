from .aggregate import CENSORED, AggregateStats, aggregate, aggregate_by_set, best_per_instance
from .experiment import ExperimentResult, InstanceHandle, load_instances, run_experiment
from .outputs import emit_outputs, save_best_solutions
from .records import ConvergenceRow, RunRecord, SummaryRow

__all__ = [
    "CENSORED",
    "AggregateStats",
    "aggregate",
    "aggregate_by_set",
    "best_per_instance",
    "ExperimentResult",
    "InstanceHandle",
    "load_instances",
    "run_experiment",
    "emit_outputs",
    "save_best_solutions",
    "ConvergenceRow",
    "RunRecord",
    "SummaryRow",
]
