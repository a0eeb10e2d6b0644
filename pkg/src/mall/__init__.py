"""Mall tenant selection: which shop type goes into each location."""

from .models import GROUP_BONUS, Layout, LayoutStats, MallInstance, ShopSize, SizeCaps
from .evaluate import (
    LayoutEvaluation,
    area_pseudo_fitness,
    count_efficiency,
    evaluate_layout,
    layout_stats,
    size_efficiency,
    upper_bound,
)
from .generator import MALL_SETS, generate_instance, generate_linked, micro_mall_instance

__all__ = [
    "GROUP_BONUS",
    "Layout",
    "LayoutStats",
    "MallInstance",
    "ShopSize",
    "SizeCaps",
    "LayoutEvaluation",
    "area_pseudo_fitness",
    "count_efficiency",
    "evaluate_layout",
    "layout_stats",
    "size_efficiency",
    "upper_bound",
    "MALL_SETS",
    "generate_instance",
    "generate_linked",
    "micro_mall_instance",
]
