from .strategies import PenaltyParams, PenaltyState, PenaltyStrategy, update_weight

__all__ = ["PenaltyParams", "PenaltyState", "PenaltyStrategy", "update_weight"]
