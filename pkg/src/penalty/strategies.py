"""
Static and dynamic penalty weights.

A penalty weight ``w`` converts the amount of constraint violation into
fitness units. Each population owns one ``PenaltyState`` and calls
``update_weight`` once per generation after replacement.

Strategies:
    static        w = static_w
    smith         w = ((best_feasible - best_all) / 2) ** severity while the best feasible
                  value trails the best overall value, else nu
    reverse_hadj  w = alpha * q for q > 0, else alpha / 2
    hadj          w = alpha * (10 - q) for q > 0 while positive, else alpha / 2
    dual          high until a feasible solution has been found, then low for good

``q`` is the violation of the current best solution, ``best_all`` the current
best fitness and ``best_feasible`` the best feasible objective found so far.
"""

import logging
from dataclasses import dataclass
from enum import Enum

from ..core.config.load_config import PenaltySettings

logger = logging.getLogger(__name__)

HADJ_CEILING = 10.0


class PenaltyStrategy(str, Enum):
    STATIC = "static"
    SMITH = "smith"
    REVERSE_HADJ = "reverse_hadj"
    HADJ = "hadj"
    DUAL = "dual"


@dataclass(frozen=True)
class PenaltyParams:
    strategy: PenaltyStrategy = PenaltyStrategy.STATIC
    static_w: float = 20.0
    alpha: float = 8.0
    nu: float = 5.0
    high: float = 50.0
    low: float = 5.0
    severity: float = 1.0
    quadratic: bool = False

    @classmethod
    def from_settings(cls, settings: PenaltySettings) -> "PenaltyParams":
        return cls(
            strategy=PenaltyStrategy(settings.strategy),
            static_w=settings.static_w,
            alpha=settings.alpha,
            nu=settings.nu,
            high=settings.high,
            low=settings.low,
            severity=settings.severity,
            quadratic=settings.quadratic,
        )

    def initial_weight(self) -> float:
        if self.strategy is PenaltyStrategy.STATIC:
            return self.static_w
        if self.strategy is PenaltyStrategy.DUAL:
            return self.high
        if self.strategy is PenaltyStrategy.SMITH:
            return self.nu
        # hadj starts low and climbs, reverse_hadj starts high and falls
        return self.alpha / 2.0 if self.strategy is PenaltyStrategy.HADJ else self.alpha * HADJ_CEILING


@dataclass
class PenaltyState:
    params: PenaltyParams
    w: float
    v_feas: float | None = None
    v_all: float | None = None
    q: float = 0.0
    found_feasible: bool = False
    maximize: bool = False

    @classmethod
    def start(cls, params: PenaltyParams, maximize: bool = False) -> "PenaltyState":
        return cls(params=params, w=params.initial_weight(), maximize=maximize)

    def observe(self, v_feas: float | None, v_all: float, q: float, best_is_feasible: bool) -> float:
        """Record this generation's best values and update the weight."""
        self.v_feas = v_feas
        self.v_all = v_all
        self.q = q
        # 一旦出现可行解就不再回到 high
        self.found_feasible = self.found_feasible or best_is_feasible or v_feas is not None
        return update_weight(self)


def _floor(weight: float, nu: float) -> float:
    return weight if weight > 0 else nu


def update_weight(state: PenaltyState) -> float:
    """
    Compute and store the next penalty weight. Never returns 0.

    Examples:
        smith with best_feasible=30, best_all=20 gives 5; reverse_hadj with alpha=8 and
        q=3 gives 24, and 4 once q is 0; hadj with alpha=10 and q=3 gives 70.
    """
    p = state.params
    strategy = p.strategy

    if strategy is PenaltyStrategy.STATIC:
        w = p.static_w
    elif strategy is PenaltyStrategy.SMITH:
        w = p.nu
        if state.v_feas is not None and state.v_all is not None:
            gap = (state.v_all - state.v_feas) if state.maximize else (state.v_feas - state.v_all)
            if gap > 0:
                w = _floor((gap / 2.0) ** p.severity, p.nu)
    elif strategy is PenaltyStrategy.REVERSE_HADJ:
        w = p.alpha * state.q if state.q > 0 else p.alpha / 2.0
    elif strategy is PenaltyStrategy.HADJ:
        # a feasible best solution drops the weight to the floor
        raw = p.alpha * max(HADJ_CEILING - state.q, 0.0) if state.q > 0 else 0.0
        w = raw if raw > 0 else p.alpha / 2.0
    elif strategy is PenaltyStrategy.DUAL:
        w = p.low if state.found_feasible else p.high
    else:
        raise ValueError(f"unknown penalty strategy {strategy}")

    if w <= 0:
        logger.warning(f"penalty weight {w} for {strategy.value} replaced by floor {p.nu}")
        w = p.nu
    state.w = float(w)
    return state.w
