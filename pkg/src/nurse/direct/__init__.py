from .coevolution import (
    GRADE_SETS,
    CoevolutionProblem,
    GradePopulation,
    MigrationMode,
    MigrationPolicy,
    SubPopLayout,
    coevolve_generation,
    main_assemblies,
    migrate,
    set_partitions,
    sub_assemblies,
)
from .delta import delta_restart, run_delta
from .repair import IncentiveConfig, apply_incentives, hill_climb_repair, incentive_bonus, repair_targets
from .solver import DirectOptions, NurseDirectProblem
from .swaps import NurseNeighbourhood, adjacent_swap, chain_swap, special_swap, swap_groups

__all__ = [
    "GRADE_SETS",
    "CoevolutionProblem",
    "GradePopulation",
    "MigrationMode",
    "MigrationPolicy",
    "SubPopLayout",
    "coevolve_generation",
    "main_assemblies",
    "migrate",
    "set_partitions",
    "sub_assemblies",
    "delta_restart",
    "run_delta",
    "IncentiveConfig",
    "apply_incentives",
    "hill_climb_repair",
    "incentive_bonus",
    "repair_targets",
    "DirectOptions",
    "NurseDirectProblem",
    "NurseNeighbourhood",
    "adjacent_swap",
    "chain_swap",
    "special_swap",
    "swap_groups",
]
