from .evaluate import Balance, CoverState, classify_balance, cover_state, evaluate, extended_penalty, pseudo_demand, sub_fitness
from .models import NurseHistory, NurseInstance, NurseKind, NurseSpec, PreferenceClass, Roster
from .patterns import PatternKind, PatternTable, ShiftPattern, adjacency_degree, enumerate_patterns

__all__ = [
    "Balance",
    "CoverState",
    "NurseHistory",
    "NurseInstance",
    "NurseKind",
    "NurseSpec",
    "PatternKind",
    "PatternTable",
    "PreferenceClass",
    "Roster",
    "ShiftPattern",
    "adjacency_degree",
    "classify_balance",
    "cover_state",
    "enumerate_patterns",
    "evaluate",
    "extended_penalty",
    "pseudo_demand",
    "sub_fitness",
]
