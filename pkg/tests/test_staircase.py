from hypothesis import given, settings
from hypothesis import strategies as st

from loctrop.core import Series, Stratum, support
from loctrop.errors import ZeroSeries
from loctrop.oracles import brute_staircase
from loctrop.staircase import E0, hat_poly, minimal_staircase, stratum_staircase, tilde_poly

import pytest

XY = ("x", "y")
P = Series.from_string("x*y - x**2 + 1/2*x**2*y + 1/6*x**3*y", XY, 4)


def _s(text):
    return Series.from_string(text, XY)


def _lam(*idx):
    return Stratum.from_label(2, idx)


def test_minimal_staircase_examples():
    assert E0(P) == ((1, 1), (2, 0))
    assert minimal_staircase([(4, 2)]).generators == ((4, 2),)
    assert set(minimal_staircase([(3, 0), (1, 1), (0, 4)]).generators) == {(3, 0), (1, 1), (0, 4)}


def test_stratum_classes_of_the_example():
    sc = stratum_staircase(P, _lam(1))
    assert sc.projected.generators == ((0,),)
    assert sc.classes == (((2, 0),),)
    assert sorted(map(sorted, stratum_staircase(P, _lam()).classes)) == [[(1, 1)], [(2, 0)]]
    assert sc.soundness != "COMPLETE"


def test_tilde_and_hat_of_the_example():
    assert tilde_poly(P, _lam()) == _s("x*y - x**2")
    assert tilde_poly(P, _lam(1, 2)).is_zero()
    assert tilde_poly(P, _lam(1)) == _s("-x**2")
    assert hat_poly(P, _lam(1)) == _s("-x**2")
    assert hat_poly(P, _lam(2)) == _s("x*y")


def test_hat_tiebreak():
    f = _s("x*y + y + x**2*y")
    assert tilde_poly(f, _lam(1)) == f
    assert hat_poly(f, _lam(1)) == _s("x*y + y")


def test_zero_series_rejected():
    with pytest.raises(ZeroSeries):
        stratum_staircase(Series.zero(2), _lam())


point_sets = st.integers(2, 3).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(0, 6)] * n), min_size=1, max_size=10))


@settings(max_examples=150, deadline=None)
@given(point_sets)
def test_matches_brute_force(S):
    E = minimal_staircase(S).generators
    assert E == brute_staircase(S, 6)
    assert not any(a != b and all(x <= y for x, y in zip(a, b)) for a in E for b in E)


@settings(max_examples=100, deadline=None)
@given(point_sets, st.data())
def test_classes_partition_minimal_fibres(S, data):
    n = len(S[0])
    f = Series(n, {e: 1 for e in S})
    zero = data.draw(st.sets(st.integers(0, n - 1), max_size=n - 1))
    lam = Stratum(n, frozenset(zero))
    sc = stratum_staircase(f, lam)
    flat = [a for cls in sc.classes for a in cls]
    assert len(flat) == len(set(flat)) and set(flat) <= support(f)
    # every exponent of f projects into the projected staircase
    keep = lam.support
    assert all(sc.projected.covers(tuple(a[i] for i in keep)) for a in support(f))
    # hat keeps at most two exponents per class and is contained in tilde
    h, t = hat_poly(f, lam), tilde_poly(f, lam)
    assert support(h) <= support(t)
    assert len(support(h)) <= 2 * len(sc.classes)
