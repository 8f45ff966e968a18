import random
from fractions import Fraction
from math import comb, factorial

import pytest

from parklab import BudgetExceededError, ParameterError
from parklab.closed_forms import AbelCase, abel_A, abel_closed_forms, compositions

INSTANCES = 250


def _instances(seed):
    rng = random.Random(seed)
    for _ in range(INSTANCES):
        k = rng.randint(1, 4)
        order = rng.randint(0, 6)
        x = [rng.randint(1, 5) for _ in range(k)]
        pw = [rng.randint(-1, 2) for _ in range(k)]
        yield x, pw, order


def test_compositions():
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    for total, parts in [(0, 3), (4, 1), (5, 3), (6, 4)]:
        cs = list(compositions(total, parts))
        assert len(cs) == len(set(cs)) == comb(total + parts - 1, parts - 1)
        assert all(sum(c) == total and min(c) >= 0 for c in cs)


def test_small_values():
    assert abel_A([2], [0], 3) == 5**3
    assert abel_A([1, 1], [0, 0], 1) == 2 * 2
    # 0 ** 0 is one
    assert abel_A([0], [0], 0) == 1
    assert isinstance(abel_A([1, 2], [-1, 0], 3), Fraction)
    assert isinstance(abel_A([1.5, 2], [-1, 0], 3), float)


def test_symmetry_under_transposition():
    rng = random.Random(11)
    for x, pw, order in _instances(1):
        if len(x) < 2:
            continue
        i, j = rng.sample(range(len(x)), 2)
        x2, pw2 = list(x), list(pw)
        x2[i], x2[j] = x2[j], x2[i]
        pw2[i], pw2[j] = pw2[j], pw2[i]
        assert abel_A(x, pw, order) == abel_A(x2, pw2, order)


def test_recurrence_in_order():
    for x, pw, order in _instances(2):
        if order == 0:
            continue
        rhs = Fraction(0)
        for i in range(len(x)):
            xi = list(x)
            pi = list(pw)
            xi[i] += 1
            pi[i] += 1
            rhs += abel_A(xi, pi, order - 1)
        assert abel_A(x, pw, order) == rhs


def test_expansion_in_first_variable():
    for x, pw, order in _instances(3):
        rhs = Fraction(0)
        for s in range(order + 1):
            xs = [x[0] + s] + x[1:]
            ps = [pw[0] - 1] + pw[1:]
            rhs += comb(order, s) * factorial(s) * (x[0] + s) * abel_A(xs, ps, order - s)
        assert abel_A(x, pw, order) == rhs


@pytest.mark.parametrize("case, last", [(AbelCase.ALL_MINUS_ONE, -1), (AbelCase.MINUS_ONE_ZERO, 0)])
def test_closed_forms(case, last):
    for x, _, order in _instances(4):
        pw = [-1] * (len(x) - 1) + [last]
        assert abel_A(x, pw, order) == abel_closed_forms(x, case, order)


def test_closed_forms_rational_and_float():
    x = [Fraction(1, 2), Fraction(3, 7), 2]
    for case, last in [(AbelCase.ALL_MINUS_ONE, -1), (AbelCase.MINUS_ONE_ZERO, 0)]:
        pw = [-1, -1, last]
        assert abel_A(x, pw, 5) == abel_closed_forms(x, case, 5)
        fx = [float(v) for v in x]
        assert abel_A(fx, pw, 5) == pytest.approx(float(abel_closed_forms(x, case, 5)), rel=1e-13)


def test_errors():
    with pytest.raises(ParameterError):
        abel_A([], [], 2)
    with pytest.raises(ParameterError):
        abel_A([1, 2], [0], 2)
    with pytest.raises(ParameterError):
        abel_A([1], [0], -1)
    with pytest.raises(ParameterError):
        abel_A([0], [-1], 0)
    with pytest.raises(ParameterError):
        abel_closed_forms([1, 0], AbelCase.ALL_MINUS_ONE, 2)
    with pytest.raises(BudgetExceededError):
        abel_A([1] * 6, [0] * 6, 60, max_compositions=1000)
