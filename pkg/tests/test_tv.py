from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from parklab import ModelParams, ParameterError
from parklab import tv
from parklab.closed_forms import q_vector

P_GRID = [0.0, 0.25, 0.5, 0.75, 1.0]


def _exact_tv(m, n, p):
    q = q_vector(ModelParams(m, n, Fraction(p)))
    return sum(abs(x - Fraction(1, n)) for x in q) / 2


def test_distance_basics():
    assert tv.tv_distance([1, 0], [0, 1]) == 1.0
    assert tv.tv_distance([0.5, 0.5], [0.5, 0.5]) == 0.0
    assert tv.tv_distance([0.2, 0.3, 0.5], [0.5, 0.3, 0.2]) == pytest.approx(0.3)
    with pytest.raises(ParameterError):
        tv.tv_distance([1.0], [0.5, 0.5])
    with pytest.raises(ParameterError):
        tv.tv_distance([0.6, 0.6], [0.5, 0.5])
    with pytest.raises(ParameterError):
        tv.tv_distance([1.5, -0.5], [0.5, 0.5])


@st.composite
def _simplex(draw, n):
    raw = np.array(draw(st.lists(st.floats(0.01, 1.0), min_size=n, max_size=n)))
    return raw / raw.sum()


@settings(max_examples=100)
@given(st.integers(1, 12).flatmap(lambda n: st.tuples(_simplex(n), _simplex(n), _simplex(n))))
def test_distance_is_a_metric(vs):
    a, b, c = vs
    d = tv.tv_distance
    assert 0 <= d(a, b) <= 1
    assert d(a, b) == pytest.approx(d(b, a), abs=1e-15)
    assert d(a, c) <= d(a, b) + d(b, c) + 1e-12


def test_examples():
    assert tv.tv_to_uniform(ModelParams(2, 2, 1.0)) == pytest.approx(1 / 6, abs=1e-15)
    assert tv.tv_to_uniform(ModelParams(2, 2, 0.5)) == 0.0
    assert tv.tv_lower_bound_half(2, 2) == 0.0
    assert tv.tv_upper_bound(1, 7) == 0.0
    assert tv.tv_upper_bound(50, 100) == pytest.approx(49 / (101 * 51), rel=1e-15)
    assert tv.tv_to_uniform(ModelParams(50, 100, 1.0)) == pytest.approx(0.008444, abs=5e-7)
    assert tv.prop_c_cap(0.5) == pytest.approx(0.325070596211999, rel=1e-14)


@pytest.mark.parametrize("m, n, p", [(3, 4, 1.0), (5, 9, 0.25), (7, 7, 0.5), (12, 20, 0.0)])
def test_float_tv_matches_exact(m, n, p):
    assert tv.tv_to_uniform(ModelParams(m, n, p)) == pytest.approx(float(_exact_tv(m, n, p)), abs=1e-14)


def test_uniform_for_one_car():
    for n in (1, 5, 40):
        for p in P_GRID:
            assert tv.tv_to_uniform(ModelParams(1, n, p)) < 1e-15
            assert tv.tv_report(ModelParams(1, n, p)).sandwich_ok


def test_sandwich_small_lattice():
    assert tv.sandwich_violations(60, P_GRID) == []


def test_report_fields():
    rep = tv.tv_report(ModelParams(20, 100, 0.5), c=0.2)
    assert rep.lower_half is not None and rep.prop_c_cap == pytest.approx(tv.prop_c_cap(0.2))
    assert rep.sandwich_ok
    assert tv.tv_report(ModelParams(20, 100, 0.7)).lower_half is None
    broken = tv.TVReport(2, 3, 1.0, tv=0.5, upper=0.1, lower=0.0)
    assert not broken.sandwich_ok


def test_family_matches_single_calls():
    fam = tv.tv_family(30, 40, P_GRID)
    single = [tv.tv_to_uniform(ModelParams(30, 40, p)) for p in P_GRID]
    assert fam == pytest.approx(single, abs=1e-15)
    # Q is affine in p, so tv is convex in p with its minimum near 1/2
    assert fam[2] <= min(fam[1], fam[3]) and fam[0] == pytest.approx(fam[4], abs=1e-14)


@pytest.mark.parametrize("p", [1.0, 0.5, 0.2])
def test_rate_band(p):
    lo, hi = tv.rate_band(0.5, p)
    rows = tv.rate_diagnostic(0.5, p, [50, 100, 200, 400])
    assert all(lo <= r.scaled <= hi for r in rows)
    assert [r.m for r in rows] == [25, 50, 100, 200]


def test_rate_band_constants():
    assert tv.rate_band(0.5, 1.0) == (0.125, 2.0)
    assert tv.rate_band(0.5, 0.0) == (0.125, 2.0)


def test_structure_checks():
    for m, n in [(5, 10), (60, 90), (100, 100)]:
        assert tv.convexity_check(m, n, 0.3) < 1e-15
        assert tv.reversal_check(m, n) < 1e-14
        assert tv.symmetry_check(m, n, 0.7) < 1e-14


def test_sweep_defaults():
    rows = tv.sweep_c()
    assert len(rows) == 90
    assert rows[0].c == 0.1 and rows[-1].c == 0.99
    assert [r.m for r in rows] == list(range(10, 100))
    tvs = [r.tv for r in rows]
    assert all(a < b for a, b in zip(tvs, tvs[1:]))
    assert all(r.tv <= min(r.upper_bound, r.prop_c_cap) for r in rows)
    assert tvs[0] == pytest.approx(0.000948, abs=1e-6)
    assert tvs[-1] == pytest.approx(0.064425, abs=1e-6)


def test_cap_domain():
    for c in (0.0, 1.0, -0.2):
        with pytest.raises(ParameterError):
            tv.prop_c_cap(c)
