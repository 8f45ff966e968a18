import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from parklab import Direction, ModelParams, ParameterError, run_protocol
from parklab.protocol import classical_is_parking_function, parks_forward_only

F, B = Direction.FORWARD, Direction.BACKWARD


def test_model_params_validation():
    assert ModelParams(2, 3, 0.25).p == 0.25
    assert ModelParams(2, 3, 1).p == 1.0 and isinstance(ModelParams(2, 3, 1).p, float)
    assert ModelParams(2, 3, Fraction(1, 3)).exact
    for bad in [(0, 3, 0.5), (4, 3, 0.5), (2, 3, 1.5), (2, 3, -0.1), (2.0, 3, 0.5), (True, 3, 0.5)]:
        with pytest.raises(ParameterError):
            ModelParams(*bad)


@pytest.mark.parametrize("prefs, coins, assigned, success", [
    ((1, 1), (None, F), (1, 2), True),
    ((2, 2), (None, F), (2, None), False),
    ((2, 2), (None, B), (2, 1), True),
    ((1, 1), (None, B), (1, None), False),
])
def test_two_car_examples(prefs, coins, assigned, success):
    trace = run_protocol(ModelParams(2, 2), prefs, coins)
    assert trace.assigned == assigned
    assert trace.success is success


def test_failed_car_does_not_stop_later_cars():
    trace = run_protocol(ModelParams(3, 3), (3, 3, 1), (None, F, None))
    assert trace.assigned == (3, None, 1)
    assert trace.coin_used == (False, True, False)
    assert not trace.success


def test_bad_inputs_rejected():
    p = ModelParams(2, 3)
    with pytest.raises(ParameterError):
        run_protocol(p, (1, 4), (F, F))
    with pytest.raises(ParameterError):
        run_protocol(p, (1,), (F,))
    with pytest.raises(ParameterError):
        run_protocol(p, (1, 1), (F,))
    with pytest.raises(ParameterError):
        run_protocol(p, (1, 1), (F, None))  # bumped car without a direction


def test_classical_examples():
    assert classical_is_parking_function((1, 1), ModelParams(2, 2))
    assert not classical_is_parking_function((2, 2), ModelParams(2, 2))
    # sorted (1,2,2,7,9,10) against thresholds (5,...,10)
    assert classical_is_parking_function((2, 7, 2, 9, 10, 1), ModelParams(6, 10))


@pytest.mark.parametrize("n", range(1, 7))
def test_sorted_criterion_matches_forward_simulation(n):
    for m in range(1, n + 1):
        params = ModelParams(m, n)
        for prefs in itertools.product(range(1, n + 1), repeat=m):
            assert classical_is_parking_function(prefs, params) == parks_forward_only(prefs, params)


@st.composite
def scenario(draw):
    n = draw(st.integers(1, 12))
    m = draw(st.integers(1, n))
    prefs = draw(st.lists(st.integers(1, n), min_size=m, max_size=m))
    coins = draw(st.lists(st.sampled_from([F, B]), min_size=m, max_size=m))
    return ModelParams(m, n), prefs, coins


def _replay(params, prefs, coins, trace):
    """Check the trace car by car against the occupancy it implies."""
    occupied = set()
    for a, coin, spot, used in zip(prefs, coins, trace.assigned, trace.coin_used):
        assert used == (a in occupied)
        if not used:
            assert spot == a
        elif spot is None:
            # every spot between the preference and the street end was taken
            span = range(a, params.n + 1) if coin is F else range(1, a + 1)
            assert all(s in occupied for s in span)
        else:
            lo, hi = (a, spot) if coin is F else (spot + 1, a + 1)
            assert (spot > a) == (coin is F)
            assert all(s in occupied for s in range(lo, hi))
        if spot is not None:
            assert spot not in occupied
            occupied.add(spot)


@given(scenario())
def test_trace_invariants(case):
    params, prefs, coins = case
    trace = run_protocol(params, prefs, coins)
    spots = [s for s in trace.assigned if s is not None]
    assert len(spots) == len(set(spots))
    assert trace.success == (None not in trace.assigned)
    _replay(params, prefs, coins, trace)
