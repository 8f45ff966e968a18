import itertools
from fractions import Fraction

import pytest

from parklab import BudgetExceededError, Direction, ModelParams, run_protocol
from parklab.oracle import (
    exact_mean,
    exact_pf_probability,
    exact_q_distribution,
    success_probability,
)
from parklab.protocol import classical_is_parking_function

P_GRID = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]


def test_single_list_examples():
    p = Fraction(2, 7)
    assert success_probability((2, 2), ModelParams(2, 2, p)) == 1 - p
    assert success_probability((1, 1), ModelParams(2, 2, p)) == p
    assert success_probability((1, 1), ModelParams(2, 2, Fraction(1, 2))) == Fraction(1, 2)
    for n in range(1, 7):
        for m in range(1, n + 1):
            assert success_probability((1,) * m, ModelParams(m, n, Fraction(1))) == 1


def _brute_force_success(prefs, params):
    """Sum over all 2^m coin vectors, each weighted by its consulted coins only."""
    p = params.p
    m = params.m
    total = Fraction(0)
    seen = set()
    for coins in itertools.product([Direction.FORWARD, Direction.BACKWARD], repeat=m):
        trace = run_protocol(params, prefs, coins)
        key = tuple(c if u else None for c, u in zip(coins, trace.coin_used))
        if key in seen:
            continue
        seen.add(key)
        if trace.success:
            w = Fraction(1)
            for c in key:
                if c is Direction.FORWARD:
                    w *= p
                elif c is Direction.BACKWARD:
                    w *= 1 - p
            total += w
    return total


@pytest.mark.parametrize("m, n", [(2, 3), (3, 3), (3, 4), (4, 4)])
def test_dfs_matches_coin_vector_enumeration(m, n):
    params = ModelParams(m, n, Fraction(1, 3))
    for prefs in itertools.product(range(1, n + 1), repeat=m):
        assert success_probability(prefs, params) == _brute_force_success(prefs, params)


def test_float_p_routes_to_float():
    v = success_probability((2, 2), ModelParams(2, 2, 0.25))
    assert isinstance(v, float) and v == pytest.approx(0.75)


@pytest.mark.parametrize("n", range(1, 7))
def test_p_one_is_classical(n):
    for m in range(1, n + 1):
        params = ModelParams(m, n, Fraction(1))
        for prefs in itertools.product(range(1, n + 1), repeat=m):
            assert success_probability(prefs, params) == int(classical_is_parking_function(prefs, params))


def test_pf_probability_examples():
    for p in P_GRID:
        assert exact_pf_probability(ModelParams(2, 2, p)) == Fraction(3, 4)
        assert exact_pf_probability(ModelParams(3, 4, p)) == Fraction(50, 64)
        assert exact_pf_probability(ModelParams(1, 5, p)) == 1


def test_q_distribution_examples():
    assert exact_q_distribution(ModelParams(2, 2, Fraction(1))) == (Fraction(2, 3), Fraction(1, 3))
    assert exact_q_distribution(ModelParams(2, 2, Fraction(0))) == (Fraction(1, 3), Fraction(2, 3))
    assert exact_q_distribution(ModelParams(1, 4, Fraction(1, 3))) == (Fraction(1, 4),) * 4


def test_mean_examples():
    assert exact_mean(ModelParams(2, 2, Fraction(1))) == Fraction(4, 3)
    assert exact_mean(ModelParams(2, 2, Fraction(1, 2))) == Fraction(3, 2)
    for n in range(1, 5):
        for m in range(1, n + 1):
            for p in P_GRID:
                assert exact_mean(ModelParams(m, n, p)) + exact_mean(ModelParams(m, n, 1 - p)) == n + 1


def test_budget_errors():
    with pytest.raises(BudgetExceededError):
        exact_pf_probability(ModelParams(7, 7, Fraction(1, 2)))
    with pytest.raises(BudgetExceededError):
        success_probability((1,) * 9, ModelParams(9, 9, Fraction(1, 2)))
    # raising the cap makes the same call legal
    assert exact_pf_probability(ModelParams(2, 7, Fraction(1, 2)), max_lists=49) == Fraction(6 * 8, 49)
