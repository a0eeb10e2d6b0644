from .direct import MallDirectProblem, MallOptions
from .coevolution import (
    AreaPopulation,
    MallCoevolutionProblem,
    MallSubPopLayout,
    mall_coevolve_generation,
    mate_select,
    pick_mate,
    shop_count_repair,
    splice_area,
    split_thirds,
)
from .decoder import PRESETS, DecodeDiagnostics, MallDecoderWeights, decode_mall
from .indirect import AdaptiveMode, MallIndirectOptions, MallIndirectProblem, configure_adaptive

__all__ = [
    "MallDirectProblem",
    "MallOptions",
    "AreaPopulation",
    "MallCoevolutionProblem",
    "MallSubPopLayout",
    "mall_coevolve_generation",
    "mate_select",
    "pick_mate",
    "shop_count_repair",
    "splice_area",
    "split_thirds",
    "PRESETS",
    "DecodeDiagnostics",
    "MallDecoderWeights",
    "decode_mall",
    "AdaptiveMode",
    "MallIndirectOptions",
    "MallIndirectProblem",
    "configure_adaptive",
]
