import itertools
from pathlib import Path

from src.ga.engine import GaConfig
from src.mall.evaluate import evaluate_layout
from src.mall.instance_io import load_mall_instance
from src.mall.models import MallInstance
from src.penalty.strategies import PenaltyParams, PenaltyStrategy

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "mall_five_areas.json"

# 0-based shop type per location of the five-area fixture:
# area 1 holds the single type-3 shop, area 3 a medium type-4 shop and
# area 5 a large type-0 shop with its whole group around it
FIXTURE_LAYOUT = (
    3, 1, 2,
    1, 1, 2,
    4, 4, 1,
    2, 2, 1,
    0, 0, 0, 1, 2,
)


def five_area_instance() -> MallInstance:
    return load_mall_instance(FIXTURE)


def small_config(**kwargs) -> GaConfig:
    defaults = dict(
        population_size=20,
        max_generations=25,
        stop_stagnation=10,
        per_gene_mutation_rate=0.1,
        penalty=PenaltyParams(strategy=PenaltyStrategy.STATIC, static_w=20.0),
    )
    defaults.update(kwargs)
    return GaConfig(**defaults)


def exhaustive_best_rent(instance: MallInstance) -> float | None:
    """Highest rent of a feasible layout by brute force; only for tiny instances."""
    best = None
    for layout in itertools.product(range(instance.n_types), repeat=instance.n_locations):
        result = evaluate_layout(layout, instance, 0.0)
        if result.feasible and (best is None or result.rent > best):
            best = result.rent
    return best
