import pytest

from src.penalty.strategies import PenaltyParams, PenaltyState, PenaltyStrategy, update_weight


def state(strategy: PenaltyStrategy, **kwargs) -> PenaltyState:
    return PenaltyState.start(PenaltyParams(strategy=strategy, **kwargs))


def test_static():
    s = state(PenaltyStrategy.STATIC, static_w=30.0)

    assert s.observe(None, 12.0, 4.0, False) == 30.0


def test_smith_half_gap():
    s = state(PenaltyStrategy.SMITH, nu=5.0)

    assert s.observe(30.0, 20.0, 2.0, False) == 5.0


def test_smith_gap_uses_formula_not_floor():
    s = state(PenaltyStrategy.SMITH, nu=5.0)

    assert s.observe(50.0, 20.0, 2.0, False) == 15.0


def test_smith_no_gap_falls_back_to_nu():
    s = state(PenaltyStrategy.SMITH, nu=5.0)

    assert s.observe(20.0, 20.0, 0.0, True) == 5.0
    assert s.observe(None, 20.0, 3.0, False) == 5.0


def test_smith_edges_up_while_best_improves():
    s = state(PenaltyStrategy.SMITH, nu=1.0)
    weights = [s.observe(40.0, v_all, 1.0, False) for v_all in (30.0, 28.0, 25.0)]

    assert weights == sorted(weights)
    assert weights[0] < weights[-1]


def test_smith_maximize_gap():
    s = PenaltyState.start(PenaltyParams(strategy=PenaltyStrategy.SMITH, nu=5.0), maximize=True)

    assert s.observe(20.0, 40.0, 1.0, False) == 10.0


def test_smith_severity():
    s = state(PenaltyStrategy.SMITH, nu=1.0, severity=2.0)

    assert s.observe(30.0, 20.0, 1.0, False) == 25.0


def test_reverse_hadj():
    s = state(PenaltyStrategy.REVERSE_HADJ, alpha=8.0)

    assert s.observe(None, 10.0, 3.0, False) == 24.0
    assert s.observe(10.0, 10.0, 0.0, True) == 4.0


def test_hadj():
    s = state(PenaltyStrategy.HADJ, alpha=10.0)

    assert s.observe(None, 10.0, 3.0, False) == 70.0
    # ten or more units short clamps to zero, then the floor
    assert s.observe(None, 10.0, 12.0, False) == 5.0


def test_dual_phases():
    s = state(PenaltyStrategy.DUAL, high=50.0, low=5.0)

    assert s.w == 50.0
    assert s.observe(None, 10.0, 2.0, False) == 50.0
    assert s.observe(9.0, 9.0, 0.0, True) == 5.0


def test_dual_stays_low_when_infeasible_member_leads_again():
    s = state(PenaltyStrategy.DUAL, high=50.0, low=5.0)
    s.observe(None, 10.0, 2.0, False)
    s.observe(9.0, 9.0, 0.0, True)

    assert s.observe(9.0, 8.0, 1.0, False) == 5.0
    assert s.found_feasible


def test_dual_low_once_a_feasible_objective_is_known():
    s = state(PenaltyStrategy.DUAL, high=50.0, low=5.0)

    assert s.observe(12.0, 8.0, 1.0, False) == 5.0


@pytest.mark.parametrize("strategy", list(PenaltyStrategy))
def test_weight_never_zero(strategy):
    s = state(strategy, static_w=1.0)
    for v_feas, v_all, q, feasible in [(None, 0.0, 0.0, False), (5.0, 5.0, 0.0, True), (3.0, 1.0, 10.0, False)]:
        s.observe(v_feas, v_all, q, feasible)
        assert update_weight(s) > 0
