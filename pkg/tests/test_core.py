from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loctrop.core import (
    Series,
    Stratum,
    as_weight,
    enumerate_strata,
    initial_form,
    parse_rational,
    stratum_of,
    support,
    weight_of,
)
from loctrop.errors import NegativeEntry, ZeroSeries

P = Series(2, {(1, 1): 1, (2, 0): -1, (2, 1): Fraction(1, 2), (3, 1): Fraction(1, 6)}, 4)
Q = Series.from_string("x**3 + x*y + y**4", ("x", "y"))


def test_support_examples():
    assert support(P) == {(1, 1), (2, 0), (2, 1), (3, 1)}
    assert support(Series.zero(2)) == set()
    assert support(Q) == {(3, 0), (1, 1), (0, 4)}


def test_weight_examples():
    assert weight_of(P, (1, 1)) == 2
    assert weight_of(P, (0, 0)) == 0
    assert weight_of(Q, (1, 2)) == 3
    with pytest.raises(ZeroSeries):
        weight_of(Series.zero(2), (1, 1))


def test_initial_form_examples():
    a = initial_form(P, (1, 0))
    assert a.body.terms == (((1, 1), Fraction(1)),) and a.is_monomial()
    b = initial_form(P, (0, 1))
    assert b.body.terms == (((2, 0), Fraction(-1)),) and b.unsound
    c = initial_form(P, (1, 1))
    assert c.body.same_terms(Series.from_string("x*y - x**2", ("x", "y")))
    assert not c.unsound


def test_strata():
    assert stratum_of((1, 1)) == Stratum(2, frozenset())
    assert stratum_of(as_weight(("0", "3/2"))) == Stratum.from_label(2, [1])
    assert stratum_of((0, 0)).is_origin
    assert [s.label for s in enumerate_strata(1)] == ["0", "1"]
    assert [s.label for s in enumerate_strata(2)] == ["0", "1", "2", "12"]
    assert len(enumerate_strata(3)) == 8
    with pytest.raises(NegativeEntry):
        stratum_of((1, -1))


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("7") == 7
    with pytest.raises(Exception):
        parse_rational("1/0")


def test_truncation_drops_high_terms():
    f = Series(2, {(1, 0): 1, (3, 3): 1}, 4)
    assert support(f) == {(1, 0)}
    # order 1 known to degree 4, squared: known to degree 5
    assert (f * f).truncation == 5


def test_string_round_trip():
    exact = P.with_truncation(None)
    assert Series.from_string(exact.to_string(("x", "y")), ("x", "y"), 4) == P
    assert P.to_string(("x", "y")).endswith("O(deg 5)")


exps = st.tuples(st.integers(0, 4), st.integers(0, 4))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.dictionaries(exps, coeffs, max_size=6).map(lambda d: Series(2, d))
weights = st.tuples(st.fractions(0, 5, max_denominator=4), st.fractions(0, 5, max_denominator=4))


@settings(max_examples=80, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@settings(max_examples=80, deadline=None)
@given(polys, polys, weights)
def test_weight_is_a_valuation(f, g, w):
    if f.is_zero() or g.is_zero():
        return
    # initial forms multiply, so weights add
    assert weight_of(f * g, w) == weight_of(f, w) + weight_of(g, w)
    if not (f + g).is_zero():
        assert weight_of(f + g, w) >= min(weight_of(f, w), weight_of(g, w))


@settings(max_examples=80, deadline=None)
@given(polys, weights)
def test_initial_form_terms_share_weight(f, w):
    if f.is_zero():
        return
    init = initial_form(f, w)
    assert all(sum(a * b for a, b in zip(w, e)) == init.value for e, _ in init.body.terms)
    assert set(support(init.body)) <= support(f)
