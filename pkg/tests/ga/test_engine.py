import pytest

from src.core.config.load_config import default_ga_settings, default_penalty_settings
from src.core.errors import GaConfigurationError
from src.ga.engine import GaConfig, GeneticAlgorithm, run, should_stop
from src.penalty.strategies import PenaltyParams, PenaltyStrategy

from .toy_problem import BitCountProblem


def small_config(**kwargs) -> GaConfig:
    defaults = dict(
        population_size=30,
        max_generations=60,
        stop_stagnation=15,
        penalty=PenaltyParams(strategy=PenaltyStrategy.STATIC, static_w=20.0),
    )
    defaults.update(kwargs)
    return GaConfig(**defaults)


# ---------- should_stop ----------

def test_should_stop_after_stagnation():
    assert should_stop([5, 4, 4, 4, 4], 3) is True
    assert should_stop([5, 4, 4, 3, 4], 3) is False


def test_should_stop_short_history():
    assert should_stop([3, 3], 5) is False


def test_should_stop_rejects_zero():
    with pytest.raises(GaConfigurationError):
        should_stop([1.0], 0)


def test_should_stop_empty_history():
    with pytest.raises(ValueError):
        should_stop([], 3)


# ---------- run ----------

def test_run_finds_feasible_optimum():
    result = run(BitCountProblem(), small_config(max_generations=150, stop_stagnation=40), 7)

    assert result.feasible
    assert result.best_feasible.objective == 3.0
    assert result.monotonicity_violations == 0
    assert result.size_violations == 0


def test_run_is_deterministic():
    cfg = small_config(record_hashes=True)

    a = run(BitCountProblem(), cfg, 99)
    b = run(BitCountProblem(), cfg, 99)

    assert a.population_hashes == b.population_hashes
    assert a.best_overall == b.best_overall
    assert a.generations == b.generations


def test_different_seeds_differ():
    cfg = small_config(record_hashes=True)

    assert run(BitCountProblem(), cfg, 1).population_hashes[0] != run(BitCountProblem(), cfg, 2).population_hashes[0]


def test_trace_one_entry_per_generation():
    result = run(BitCountProblem(), small_config(), 3)

    assert len(result.trace) == result.generations + 1
    assert [s.generation for s in result.trace] == list(range(result.generations + 1))


def test_best_fitness_never_worsens_under_fixed_weight():
    result = run(BitCountProblem(), small_config(), 5)
    best = [s.best_fitness for s in result.trace]

    assert all(b <= a + 1e-9 for a, b in zip(best, best[1:]))


def test_max_generations_cap():
    result = run(BitCountProblem(), small_config(max_generations=4, stop_stagnation=100), 11)

    assert result.generations == 4


def test_improve_hook_called_every_generation():
    ga = GeneticAlgorithm(BitCountProblem(), small_config(max_generations=5, stop_stagnation=100), 0)

    result = ga.run()

    assert result.diagnostics["improve_calls"] == 5


def test_dynamic_penalty_run_has_no_violations():
    cfg = small_config(penalty=PenaltyParams(strategy=PenaltyStrategy.SMITH, nu=5.0))

    result = run(BitCountProblem(length=20, need=8), cfg, 21)

    assert result.monotonicity_violations == 0
    assert result.size_violations == 0


def test_best_of_n_seeding():
    result = run(BitCountProblem(), small_config(seeding="best_of_n", max_generations=3), 4)

    assert result.generations <= 3


def test_config_from_settings():
    ga = default_ga_settings("mall", "direct")
    cfg = GaConfig.from_settings(ga, default_penalty_settings("mall"))

    assert cfg.population_size == ga.population_size
    assert cfg.penalty.strategy is PenaltyStrategy.STATIC
    assert cfg.penalty.static_w == 30.0
