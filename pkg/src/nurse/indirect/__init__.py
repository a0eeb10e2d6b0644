from .bounds import apply_simple_bound, boundary_point, bounded_candidates
from .decoders import (
    DECODERS,
    DecoderWeights,
    DecodeStats,
    ShortfallWorkspace,
    decode_combined,
    decode_cover_highest,
    decode_overall_contribution,
)
from .search_order import OrderKind, make_search_order, make_search_orders
from .solver import IndirectOptions, NurseIndirectProblem

__all__ = [
    "apply_simple_bound",
    "boundary_point",
    "bounded_candidates",
    "DECODERS",
    "DecoderWeights",
    "DecodeStats",
    "ShortfallWorkspace",
    "decode_combined",
    "decode_cover_highest",
    "decode_overall_contribution",
    "OrderKind",
    "make_search_order",
    "make_search_orders",
    "IndirectOptions",
    "NurseIndirectProblem",
]
