import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loctrop import polyhedra as ph
from loctrop.core import Series, initial_form
from loctrop.errors import DomainError
from loctrop.localgb import (
    MonomialFound,
    MonomialFree,
    groebner_cone,
    initial_ideal,
    local_groebner_fan,
    local_order,
    monomial_freeness,
    normal_form,
    standard_basis,
    tropical_finite_set,
    tropvar_general,
    twin_check,
)
from loctrop.mora import mora_normal_form, to_poly
from loctrop.oracles import initial_is_monomial, random_ideal
from loctrop.tropical import member_prevariety, prevariety

XY = ("x", "y")
P = Series.from_string("x*y - x**2 + 1/2*x**2*y + 1/6*x**3*y", XY)


def _s(text, names=XY):
    return Series.from_string(text, names)


def _x(text):
    return Series.from_string(text, ("x",))


def _shape(fan):
    return [(c.dim, ph.rays(c)) for c in fan.cones]


# normal forms ------------------------------------------------------------------------------------

def test_normal_form_examples():
    order = local_order((1,))
    r, tr = normal_form(_x("x"), [_x("x - x**2")], order)
    assert r.is_zero()
    assert tr.replays(to_poly(_x("x")), [to_poly(_x("x - x**2"))], order)
    r, _ = normal_form(_s("y"), [_s("x")], local_order((1, 1)))
    assert r == _s("y")
    r, tr = normal_form(P, [P, _s("y")], local_order((1, 1)))
    assert r.is_zero() and tr.quotients[1] == {}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_division_trace_replays(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    G = [to_poly(g) for g in random_ideal(rng, n, degree=3)]
    f = to_poly(random_ideal(rng, n, max_gens=1, count=1, degree=3)[0])
    order = local_order(tuple(Fraction(rng.randint(1, 4)) for _ in range(n)))
    r, tr = mora_normal_form(f, G, order, trace=True)
    assert tr.replays(f, G, order)
    # the remainder has no leading term divisible by a leading term of G
    if r:
        lead = order.leading(r)
        assert not any(all(a <= b for a, b in zip(order.leading(g), lead)) for g in G)


# standard bases ------------------------------------------------------------------------------------

def test_standard_basis_examples():
    # minimal basis: the generator itself, scaled to leading coefficient 1
    sb = standard_basis([P], local_order((1, 1)), reduced=False)
    (g,) = sb.elements
    assert sb.leading_exponents == ((2, 0),) and g == P.scale(-1)
    # reduced: tails rewritten into standard monomials x*y^k up to the tail degree
    sb = standard_basis([P], local_order((1, 1)))
    (g,) = sb.elements
    assert g.coeff((2, 0)) == 1 and g.coeff((1, 1)) == -1
    assert all(e == (2, 0) or (e[0] == 1 and sum(e) <= sb.tail_degree) for e, _ in g.terms)
    sb = standard_basis([_x("x - x**2")], local_order((1,)))
    assert [g.terms for g in sb.elements] == [(((1,), Fraction(1)),)]
    sb = standard_basis([_s("x**2 - y**3"), _s("x*y")], local_order((1, 1)))
    assert {(2, 0), (1, 1), (0, 4)} <= set(sb.leading_exponents)
    # leading exponents generate Exp(I): leading terms of random ideal elements are covered
    gens = [_s("x**2 - y**3"), _s("x*y")]
    rng = random.Random(1)
    for _ in range(60):
        h = Series.zero(2)
        for g in gens:
            q = Series(2, {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-3, 3) for _ in range(3)})
            h = h + q * g
        if not h.is_zero():
            assert sb.covers(sb.order.leading(h.as_dict()))
    # a monomial that reduces to zero lies in I, so it is covered
    for a in range(9):
        for b in range(9 - a):
            if normal_form(Series.monomial((a, b)), list(sb.elements), sb.order)[0].is_zero():
                assert sb.covers((a, b))


def test_initial_ideal_examples():
    # generators are scaled to leading coefficient 1
    assert initial_ideal([P], (1, 1)) == [_s("x**2 - x*y")]
    assert initial_ideal([P], (2, 1)) == [_s("x*y")]
    assert initial_ideal([_s("x")], (3, 5)) == [_s("x")]


def test_groebner_cone_examples():
    assert groebner_cone([P], (1, 1)).cone == ph.canonicalize(ph.cone(2, [(1, -1)], [(1, 0)]))
    assert groebner_cone([P], (2, 1)).cone == ph.canonicalize(ph.cone(2, [], [(0, 1), (1, -1)]))
    assert groebner_cone([_s("x")], (1, 1)).cone == ph.orthant(2)


def test_local_groebner_fan_examples():
    lgf = local_groebner_fan([P])
    interior = [c for c in lgf.fan.maximal() if all(x > 0 for x in ph.interior_sample(c))]
    assert len(interior) == 2 and len(lgf.fan.cones) == 6
    diag = lgf.cone_of((1, 1))
    assert diag.initial == (_s("x**2 - x*y"),)
    assert lgf.cone_of((2, 1)).initial[0].terms[0][0] == (1, 1)
    assert lgf.cone_of((1, 2)).initial[0].terms[0][0] == (2, 0)
    assert len(local_groebner_fan([_s("x + y")]).fan.cones) == 6
    mono = local_groebner_fan([_s("x")])
    assert len(mono.fan.maximal()) == 1 and mono.fan.maximal()[0] == ph.orthant(2)


def test_fan_needs_few_variables():
    with pytest.raises(DomainError):
        local_groebner_fan([Series.monomial((1, 0, 0, 0, 0))])


# monomial tests -------------------------------------------------------------------------------------

def test_monomial_freeness_examples():
    v = monomial_freeness([P], (1, 1))
    assert isinstance(v, MonomialFree) and v.replays()
    v = monomial_freeness([_s("x - y"), _s("x + y")], (1, 1))
    assert isinstance(v, MonomialFound) and v.replays()
    v = monomial_freeness([_s("1")], (2, 3))
    assert isinstance(v, MonomialFound) and v.monomial == (0, 0)


def test_tropical_variety_examples():
    assert _shape(tropvar_general([P]).fan) == [(0, []), (1, [(1, 1)])]
    assert tropvar_general([_s("x")]).fan.cones == []


def test_two_generator_variety_against_prevariety():
    gens = [_s("x + y + x**2"), _s("y + y**2")]
    tv = tropvar_general(gens)
    pv = prevariety(gens)
    rng = random.Random(0)
    for _ in range(50):
        w = tuple(Fraction(rng.randint(0, 8), rng.randint(1, 4)) for _ in range(2))
        if tv.contains(w):
            assert pv.contains(w)
        if not member_prevariety(gens, w):
            assert not tv.contains(w)
        if any(w) and not tv.contains(w):
            assert isinstance(monomial_freeness(gens, w), MonomialFound)


# twin check and finite sets ----------------------------------------------------------------------

def test_twin_examples():
    assert twin_check([P], (0, 0), (1, 1))
    assert twin_check([P], (1, 1), (2, 1))
    assert twin_check([_s("x**2")], (1, 0), (1, 1))


def test_finite_set_examples():
    H = tropical_finite_set([P])
    # the generator made monic at each cone's monomial
    assert {h.element for h in H} == {P, P.scale(-1)}
    assert {h.monomial for h in H} == {(1, 1), (2, 0)}
    assert [h.element for h in tropical_finite_set([_s("x")])] == [_s("x")]
    H = tropical_finite_set([_s("x - y"), _s("x + y")])
    for w in [(1, 1), (1, 2), (3, 1)]:
        assert any(initial_is_monomial(h.element, w) for h in H)
    assert all(initial_form(h.element, (1, 2)).body.terms for h in H)
