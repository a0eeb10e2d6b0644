"""
Balance incentives and hill-climbing repair for the co-evolutionary solver.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ...core.config.load_config import NurseSettings
from ...ga.population import Individual
from ..evaluate import Balance, cover_state
from ..models import NurseInstance, Roster

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IncentiveConfig:
    incentive: float = 3.0
    disincentive: float = 3.0
    top_k: int = 5

    @classmethod
    def from_settings(cls, settings: NurseSettings) -> "IncentiveConfig":
        return cls(
            incentive=settings.incentive,
            disincentive=settings.disincentive,
            top_k=settings.repair_top_k,
        )


def incentive_bonus(balance: Balance, cfg: IncentiveConfig) -> float:
    """Multiplier of w added to the fitness: negative rewards, positive punishes."""
    if balance is Balance.BALANCED:
        return -cfg.incentive
    if balance is Balance.UNBALANCED:
        return cfg.disincentive
    return 0.0


def apply_incentives(fitness: float, balance: Balance, w: float, cfg: IncentiveConfig) -> float:
    return fitness + w * incentive_bonus(balance, cfg)


def hill_climb_repair(roster: Sequence[int], instance: NurseInstance, w: float, quadratic: bool = False) -> Roster:
    """
    One pass nurse by nurse: move each nurse to the feasible pattern with the
    lowest ``cost + w * violation`` when that is a strict improvement. Ties
    keep the earliest pattern of the feasible set.
    """
    current = list(roster)
    matrix = instance.table.matrix.astype(np.int64)
    provided = cover_state(current, instance).provided
    demand = instance.demand
    changed = 0
    for i in range(len(current)):
        covers = instance.grade_at_most[i]
        base = provided - np.outer(matrix[current[i]], covers)
        options = np.asarray(instance.feasible[i], dtype=np.int64)
        trial = base[None, :, :] + matrix[options][:, :, None] * covers[None, None, :]
        missing = np.maximum(demand[None, :, :] - trial, 0)
        penalty = (missing ** 2).sum(axis=(1, 2)) if quadratic else missing.sum(axis=(1, 2))
        scores = instance.cost_matrix[i, options] + w * penalty
        now = int(np.flatnonzero(options == current[i])[0])
        best = int(np.argmin(scores))
        if scores[best] < scores[now] - 1e-9:
            current[i] = int(options[best])
            provided = base + np.outer(matrix[current[i]], covers)
            changed += 1
    if changed:
        logger.debug(f"hill climb moved {changed} nurse(s)")
    return tuple(current)


def repair_targets(ranked: Sequence[Individual], balances: Sequence[Balance], top_k: int) -> list[int]:
    """
    Positions in ``ranked`` to repair: the best Balanced members first, then
    the best Feasible ones, ``top_k`` in total.
    """
    balanced = [p for p, b in enumerate(balances) if b is Balance.BALANCED]
    feasible = [p for p, b in enumerate(balances) if b is Balance.FEASIBLE]
    return (balanced + feasible)[:top_k]
