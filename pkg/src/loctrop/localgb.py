"""Local standard bases, Gröbner cones and fans, monomial tests and tropical bases.

All generators must be EXACT polynomials.  Reduced standard bases have
infinitely long tails in general, so tails are reduced modulo terms of total
degree above ``tail_degree``; every object produced from such a basis records
that degree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import polyhedra as ph
from .core import Exponent, Series, Stratum, Weight, as_weight, dominates, enumerate_strata, stratum_of
from .errors import DomainError, LiftFailed, TraversalIncomplete
from .mora import (
    DivisionTrace,
    StepBudgetExceeded,
    highest_corner_cutoff,
    MonomialOrder,
    initial_part,
    is_unit_ideal,
    mora_normal_form,
    padd,
    pmul,
    reduce_below,
    reduce_tails,
    saturate_by_monomial,
    standard_basis_raw,
    to_poly,
    truncate,
    truncation_caps,
    truncation_rays,
)
from .staircase import minimal_staircase
from .tropical import MONOMIAL_TEST, GroebnerConeRef, TropicalVarietyResult

DEFAULT_TAIL_DEGREE = 10
DEFAULT_BOUND = 8

TIEBREAK = "local degree-reverse-lexicographic (ds)"


def local_order(*weights) -> MonomialOrder:
    """The local order comparing by each weight in turn, then the ds tiebreak."""
    return MonomialOrder.weighted(*weights, local=True)


def _polys(gens: Sequence[Series]) -> tuple[int, list[dict]]:
    if not gens:
        raise DomainError("empty generator list")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise DomainError("generators live in different rings")
        if not g.exact:
            raise DomainError(
                "standard bases need EXACT polynomial generators; "
                "use the prevariety command for truncated series"
            )
    polys = [to_poly(g) for g in gens if not g.is_zero()]
    if not polys:
        raise DomainError("all generators are zero")
    return n, polys


def effective_tail_degree(gens: Sequence[Series], tail_degree: int | None) -> int:
    top = max(g.total_degree() for g in gens)
    return tail_degree if tail_degree is not None else max(DEFAULT_TAIL_DEGREE, top + 4)


@dataclass(frozen=True)
class StandardBasis:
    elements: tuple[Series, ...]
    order: MonomialOrder
    reduced: bool
    leading_exponents: tuple[Exponent, ...]
    tail_degree: int | None = None

    def polys(self) -> list[dict]:
        return [to_poly(g) for g in self.elements]

    def covers(self, alpha: Exponent) -> bool:
        return any(dominates(l, alpha) for l in self.leading_exponents)

    def to_json(self) -> dict:
        return {
            "order": self.order.describe(),
            "reduced": self.reduced,
            "tail_degree": self.tail_degree,
            "elements": [
                {"leading": list(l), "terms": g.term_list()}
                for l, g in zip(self.leading_exponents, self.elements)
            ],
        }


def _wrap(G: list[dict], n: int, order: MonomialOrder, reduced: bool, D: int | None) -> StandardBasis:
    # sorted by leading exponent so the listing does not depend on the point of the cone
    pairs = sorted(((order.leading(g), g) for g in G), key=lambda t: t[0])
    leads = tuple(e for e, _ in pairs)
    els = tuple(Series(n, g) for _, g in pairs)
    return StandardBasis(els, order, reduced, leads, D)


def standard_basis(gens: Sequence[Series], order: MonomialOrder, reduced: bool = True,
                   tail_degree: int | None = None) -> StandardBasis:
    """Minimal unitary standard basis; with ``reduced`` the tails are reduced up to ``tail_degree``."""
    n, polys = _polys(gens)
    G = standard_basis_raw(polys, order)
    if not reduced:
        return _wrap(G, n, order, False, None)
    D = effective_tail_degree(gens, tail_degree)
    if is_unit_ideal(G, order):
        return _wrap([{(0,) * n: Fraction(1)}], n, order, True, D)
    # never cut below a leading term
    D = max([D] + [sum(order.leading(g)) for g in G])
    return _wrap(reduce_tails(G, order, D), n, order, True, D)


def normal_form(f: Series, G: Sequence[Series], order: MonomialOrder):
    """Mora weak normal form of ``f`` with its division trace."""
    _polys([f] if not f.is_zero() else [Series.monomial((0,) * f.n)])
    gp = [to_poly(g) for g in G]
    r, tr = mora_normal_form(to_poly(f), gp, order, trace=True)
    return Series(f.n, r), tr


def initial_ideal(gens: Sequence[Series], w, tail_degree: int | None = None) -> list[Series]:
    """``in_w`` of every element of the reduced standard basis for the order of ``w``."""
    w = as_weight(w)
    stratum_of(w)
    sb = standard_basis(gens, local_order(w), tail_degree=tail_degree)
    return [Series(g.n, initial_part(to_poly(g), [w])) for g in sb.elements]


# Gröbner cones ----------------------------------------------------------------------------

@dataclass
class GroebnerCone:
    cone: ph.RationalCone
    stratum: Stratum
    reduced_basis: StandardBasis
    initial: tuple[Series, ...]
    initial_exponents: tuple[tuple[Exponent, ...], ...]
    point: tuple[Weight, ...]
    id: str = ""

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "stratum": self.stratum.label,
            "initial": [g.term_list() for g in self.initial],
        }


def _cone_from_basis(G: list[dict], weights: Sequence[Weight], n: int, lam: Stratum):
    eqs, ineqs, inits = [], [], []
    for g in G:
        S = initial_part(g, weights)
        inits.append(S)
        a0 = min(S)
        for b in S:
            if b != a0:
                eqs.append(tuple(x - y for x, y in zip(a0, b)))
        tail = [e for e in g if e not in S]
        if tail:
            for c in minimal_staircase(tail).generators:
                ineqs.append(tuple(x - y for x, y in zip(c, a0)))
    closure = ph.stratum_closure(lam)
    c = ph.canonicalize(ph.RationalCone(n, tuple(eqs) + closure.equalities,
                                        tuple(ineqs) + closure.inequalities))
    return c, inits


MAX_TAIL_DEGREE = 60


def _stable_cone(G: list[dict], order: MonomialOrder, weights, n: int, lam: Stratum, D: int):
    """Cone from tails reduced to degree D, raising D until the cone stops changing.

    Tail terms above the cut can still tighten the cone (for instance x^9*y*z
    against a leading term of degree 3 near a coordinate hyperplane), so the
    cone is accepted only once two successive cuts agree.  Returns the cone
    and the tails reduced up to the accepted degree.
    """
    rays = truncation_rays(G, order)
    leads = [order.leading(g) for g in G]

    def tails(d):
        caps = truncation_caps(leads, rays, n, d)
        return [reduce_below(g, G, leads, order, d, skip=l, caps=caps) for g, l in zip(G, leads)]

    # reduction is exact below the cut, so lower cuts are truncations of higher ones
    prev = None
    while D < MAX_TAIL_DEGREE:
        D_next = D + max(4, D // 2)
        R = tails(D_next)
        if prev is None:
            prev = _cone_from_basis([truncate(g, D) for g in R], weights, n, lam)[0]
        cur = _cone_from_basis(R, weights, n, lam)[0]
        if cur == prev:
            return cur, R
        prev, D = cur, D_next
    raise TraversalIncomplete(tuple(weights[0]), "Gröbner cone did not stabilise under tail refinement")


def groebner_cone(gens: Sequence[Series], w, perturbation=None,
                  tail_degree: int | None = None) -> GroebnerCone:
    """Closed Gröbner cone of ``w`` (or of ``w + eps*perturbation`` when given)."""
    w = as_weight(w)
    lam = stratum_of(w)
    n, polys = _polys(gens)
    weights = [w]
    if perturbation is not None:
        v = as_weight(perturbation)
        weights.append(tuple(Fraction(0) if i in lam.zero_set else v[i] for i in range(n)))
    order = local_order(*weights)
    G = standard_basis_raw(polys, order)
    if is_unit_ideal(G, order):
        G = [{(0,) * n: Fraction(1)}]
    D = max([effective_tail_degree(gens, tail_degree)] + [sum(order.leading(g)) for g in G])
    c, R = _stable_cone(G, order, weights, n, lam, D)
    # the reported basis is cut at D so that it does not depend on how far the check went
    sb = _wrap([truncate(g, D) for g in R], n, order, True, D)
    _, inits = _cone_from_basis(sb.polys(), weights, n, lam)
    return GroebnerCone(
        c, lam, sb,
        tuple(Series(n, s) for s in inits),
        tuple(tuple(sorted(s)) for s in inits),
        tuple(weights),
    )


def _generic_direction(n: int, D: int) -> Weight:
    base = D + 2
    return tuple(Fraction(base ** i) for i in range(n))


@dataclass
class LocalGroebnerFan:
    fan: ph.Fan
    cones: dict            # every fan cone -> its GroebnerCone
    tail_degree: int

    @property
    def maximal_by_stratum(self) -> dict:
        out: dict = {}
        for c in self.fan.maximal():
            out.setdefault(ph.cone_stratum(c).label, []).append(c)
        return out

    def interior_cones(self) -> list[ph.RationalCone]:
        return [c for c in self.fan.cones if ph.cone_stratum(c).is_maximal]

    def cone_of(self, w) -> GroebnerCone:
        """The fan cone whose relative interior contains ``w``."""
        w = as_weight(w)
        for c in self.fan.cones:
            if c.contains_relint(w):
                return self.cones[c]
        raise TraversalIncomplete(w)


def _traverse_stratum(gens, n: int, lam: Stratum, D: int) -> list[GroebnerCone]:
    d = len(lam.support)
    if d == 0:
        return [groebner_cone(gens, (0,) * n, tail_degree=D)]
    p = tuple(Fraction(0) if i in lam.zero_set else Fraction(1) for i in range(n))
    start = groebner_cone(gens, p, perturbation=_generic_direction(n, D), tail_degree=D)
    if start.cone.dim != d:
        raise TraversalIncomplete(p, "could not find a full-dimensional starting cone")
    found = {start.cone: start}
    queue = [start]
    shared: Counter = Counter()
    while queue:
        cur = queue.pop(0)
        for normal, facet in ph.facets(cur.cone):
            q = ph.interior_sample(facet)
            if any(q[i] == 0 for i in lam.support):
                continue  # facet lies on the boundary of the stratum closure
            shared[facet] += 1
            v = tuple(-a for a in normal)
            nb = groebner_cone(gens, q, perturbation=v, tail_degree=D)
            if nb.cone == cur.cone or nb.cone.dim != d or not nb.cone.contains(q):
                raise TraversalIncomplete(q, "facet crossing did not reach a new cone")
            if nb.cone not in found:
                found[nb.cone] = nb
                queue.append(nb)
    for facet, k in shared.items():
        if k != 2:
            raise TraversalIncomplete(ph.interior_sample(facet))
    return list(found.values())


def local_groebner_fan(gens: Sequence[Series], tail_degree: int | None = None) -> LocalGroebnerFan:
    n, _ = _polys(gens)
    if n > 4:
        raise DomainError("local Gröbner fans are supported for n <= 4")
    D = effective_tail_degree(gens, tail_degree)
    maximal = []
    for lam in enumerate_strata(n):
        maximal.extend(gc.cone for gc in _traverse_stratum(gens, n, lam, D))
    fan = ph.validate_fan(maximal, n)
    records = {}
    for c in fan.cones:
        gc = groebner_cone(gens, ph.interior_sample(c), tail_degree=D)
        if gc.cone != c:
            raise TraversalIncomplete(ph.interior_sample(c), "fan cone is not a Gröbner cone")
        records[c] = gc
    for k, c in enumerate(fan.cones):
        records[c].id = f"C{k}"
    return LocalGroebnerFan(fan, records, D)


# monomial freeness --------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialFound:
    """``monomial`` lies in the ideal generated by ``basis``; ``trace`` is the division.

    When ``trace.cutoff`` is set the identity holds modulo ``m^cutoff``; the
    replay then also re-derives from the leading exponents of ``basis`` that
    ``m^cutoff`` lies in the ideal.
    """

    monomial: Exponent
    trace: DivisionTrace
    basis: tuple[dict, ...]
    order: MonomialOrder
    cutoff_checked: bool = False

    verdict = "monomial"

    def replays(self) -> bool:
        m = {self.monomial: Fraction(1)}
        if self.trace.remainder or not self.trace.replays(m, self.basis, self.order):
            return False
        if self.trace.cutoff is None:
            return True
        N = highest_corner_cutoff(list(self.basis), self.order)
        return N is not None and N <= self.trace.cutoff


@dataclass(frozen=True)
class MonomialFree:
    saturation: tuple[dict, ...]
    order: MonomialOrder

    verdict = "free"

    def replays(self) -> bool:
        one = {(0,) * self.order.n: Fraction(1)}
        return bool(mora_normal_form(one, list(self.saturation), self.order))


@dataclass(frozen=True)
class Unknown:
    reason: str

    verdict = "unknown"

    def replays(self) -> bool:
        return False


def _initial_generators(gens, w: Weight, perturbation=None) -> tuple[list[dict], MonomialOrder]:
    weights = [w] + ([perturbation] if perturbation is not None else [])
    order = local_order(*weights)
    _, polys = _polys(gens)
    G = standard_basis_raw(polys, order)
    J = [initial_part(g, [w]) for g in G]
    return J, local_order(w)


def _find_monomial(J: list[dict], order: MonomialOrder, n: int, bound: int,
                   cutoff: int | None = None, max_steps: int | None = None):
    """Smallest monomial in ``<J>`` dividing ``(x_1...x_n)^k`` for some ``k <= bound``."""
    def member(exp):
        try:
            r, tr = mora_normal_form({exp: Fraction(1)}, J, order, trace=True,
                                     cutoff=cutoff, max_steps=max_steps)
        except StepBudgetExceeded:
            return None
        return None if r else tr

    for k in range(bound + 1):
        if member((k,) * n) is None:
            continue
        for exp in sorted(product(range(k + 1), repeat=n), key=lambda e: (sum(e), [-x for x in e])):
            tr = member(exp)
            if tr is not None:
                return exp, tr
    return None


NF_STEP_BUDGET = 20_000


def monomial_freeness(gens: Sequence[Series], w, bound: int = DEFAULT_BOUND):
    """Decide whether ``in_w(I)`` contains a monomial."""
    w = as_weight(w)
    stratum_of(w)
    n = len(w)
    J, order = _initial_generators(gens, w)
    N = highest_corner_cutoff(J, order)
    if N is not None:
        # m^N lies in <J>, so arithmetic modulo m^N is exact for membership
        found = _find_monomial(J, order, n, N, cutoff=N)
        verdict = MonomialFound(found[0], found[1], tuple(J), order, cutoff_checked=True)
        return verdict if verdict.replays() else Unknown("membership trace did not replay")
    # a cheap bounded search settles most cones that do contain a monomial
    found = _find_monomial(J, order, n, min(bound, 2), max_steps=NF_STEP_BUDGET)
    if found is None:
        Q = saturate_by_monomial(J, n, range(n))
        SQ = standard_basis_raw(Q, order) if Q else []
        if not (SQ and is_unit_ideal(SQ, order)):
            return MonomialFree(tuple(SQ), order)
        found = _find_monomial(J, order, n, bound, max_steps=NF_STEP_BUDGET)
        if found is None:
            return Unknown(f"saturation contains a unit but no monomial dividing (x1...xn)^{bound} "
                           "was confirmed within the normal-form budget")
    verdict = MonomialFound(found[0], found[1], tuple(J), order)
    return verdict if verdict.replays() else Unknown("membership trace did not replay")


# tropical variety via the fan ----------------------------------------------------------------

def tropvar_general(gens: Sequence[Series], bound: int = DEFAULT_BOUND,
                    tail_degree: int | None = None, lgf: LocalGroebnerFan | None = None):
    """Local tropical variety as the monomial-free subfan of the local Gröbner fan."""
    lgf = lgf or local_groebner_fan(gens, tail_degree)
    n = lgf.fan.ambient_dim
    verdicts = {c: monomial_freeness(gens, ph.interior_sample(c), bound) for c in lgf.fan.cones}
    caveats = [f"standard-basis tails reduced up to total degree {lgf.tail_degree}"]
    unknown = [lgf.cones[c].id for c, v in verdicts.items() if v.verdict == "unknown"]
    if unknown:
        caveats.append("monomial test inconclusive on cones " + ", ".join(unknown))
    free = [c for c, v in verdicts.items() if v.verdict == "free"]
    maximal = [c for c in free if not any(c != d and ph.is_face(c, d) for d in free)]
    fan = ph.validate_fan(maximal, n)
    for c in fan.cones:
        if verdicts[c].verdict != "free":
            caveats.append(f"face {lgf.cones[c].id} of a monomial-free cone is not itself monomial-free")
    certs = {c: GroebnerConeRef(lgf.cones[c].id) for c in fan.cones}
    strata = sorted({ph.cone_stratum(c).label for c in fan.cones})
    result = TropicalVarietyResult(n, "variety", MONOMIAL_TEST, fan, fan.maximal(), certs, strata, caveats)
    result.lgf = lgf
    result.verdicts = verdicts
    return result


def twin_check(gens: Sequence[Series], w_prime, w, tail_degree: int | None = None) -> bool:
    """Compare ``in_{w'+eps w}(G)`` with ``in_w`` of a basis of ``in_{w'}(I)``."""
    w_prime, w = as_weight(w_prime), as_weight(w)
    n, polys = _polys(gens)
    D = effective_tail_degree(gens, tail_degree)
    stacked = local_order(w_prime, w)
    raw_left = standard_basis_raw(polys, stacked)
    if any(w_prime):
        prime_order = local_order(w_prime)
        Gp = standard_basis_raw(polys, prime_order)
        J = [initial_part(g, [w_prime]) for g in Gp]
    else:
        J = polys
    wo = local_order(w)
    raw_right = standard_basis_raw(J, wo)
    D = max([D] + [sum(stacked.leading(g)) for g in raw_left] + [sum(wo.leading(h)) for h in raw_right])
    left = reduce_tails(raw_left, stacked, D)
    lhs = sorted(_monic_key(initial_part(g, [w_prime, w])) for g in left)
    H = reduce_tails(raw_right, wo, D)
    rhs = sorted(_monic_key(initial_part(h, [w])) for h in H)
    if all(x > 0 for x in w):
        return lhs == rhs
    cut = D // 2
    return [_cut(t, cut) for t in lhs] == [_cut(t, cut) for t in rhs]


def _monic_key(f: dict) -> tuple:
    lead = max(f)
    c = f[lead]
    return tuple(sorted((e, v / c) for e, v in f.items()))


def _cut(t: tuple, degree: int) -> tuple:
    return tuple((e, c) for e, c in t if sum(e) <= degree)


# tropical finite sets --------------------------------------------------------------------------

@dataclass
class LiftedElement:
    element: Series
    monomial: Exponent
    cone_ids: list[str]
    source: str
    exact: bool

    def to_json(self) -> dict:
        return {
            "monomial": list(self.monomial),
            "cones": self.cone_ids,
            "source": self.source,
            "exact": self.exact,
            "terms": self.element.term_list(),
        }


def initial_constant_on_cone(f: dict, m: Exponent, c: ph.RationalCone) -> bool:
    """Exact check that ``in_u(f)`` is the single term ``m`` for every ``u`` in relint(c)."""
    if m not in f:
        return False
    p = ph.interior_sample(c)
    for g in f:
        if g == m:
            continue
        ell = [a - b for a, b in zip(g, m)]
        # ell >= 0 on c, and > 0 at a relative-interior point
        if sum(Fraction(a) * b for a, b in zip(ell, p)) <= 0:
            return False
        if ph.solve(c.equalities, c.inequalities, [(tuple(-a for a in ell), Fraction(1))], c.ambient_dim) is not None:
            return False
    return True


def _check_lift(f: dict, m: Exponent, c: ph.RationalCone) -> bool:
    if not initial_constant_on_cone(f, m, c):
        return False
    # the monomial survives in the initial form at every ray of the cone
    for r in ph.rays(c):
        if m not in initial_part(f, [r]):
            return False
    return True


def _lift_candidates(gens, polys, c: ph.RationalCone, m: Exponent, D: int):
    w = ph.interior_sample(c)
    order = local_order(w)
    for k, g in enumerate(polys):
        yield g, f"generator {k + 1}", True
    G = standard_basis_raw(polys, order)
    for g in G:
        yield g, "standard basis element", True
    J = [initial_part(g, [w]) for g in G]
    try:
        r, tr = mora_normal_form({m: Fraction(1)}, J, order, trace=True,
                                 cutoff=highest_corner_cutoff(J, order), max_steps=NF_STEP_BUDGET)
    except StepBudgetExceeded:
        r, tr = True, None
    if not r:
        # unit*m = sum q_i in_w(g_i) (mod m^N); sum q_i g_i is in I and is checked afterwards
        f: dict = {}
        for q, g in zip(tr.quotients, G):
            f = padd(f, pmul(q, g))
        if f:
            yield f, "division trace", True
    D = max([D, sum(m)] + [sum(order.leading(g)) for g in G])
    nf = _reduced_normal_form({m: Fraction(1)}, G, order, D)
    yield padd({m: Fraction(1)}, nf, -1), "monomial minus reduced normal form", not nf


def _reduced_normal_form(f: dict, R: list[dict], order: MonomialOrder, D: int) -> dict:
    leads = [order.leading(g) for g in R]
    return reduce_below(f, R, leads, order, D)


def tropical_finite_set(gens: Sequence[Series], bound: int = DEFAULT_BOUND,
                        tail_degree: int | None = None, variety=None) -> list[LiftedElement]:
    """A finite subset of the ideal whose tropical prevariety is the local tropical variety."""
    n, polys = _polys(gens)
    variety = variety or tropvar_general(gens, bound, tail_degree)
    lgf = variety.lgf
    out: list[LiftedElement] = []
    for c in lgf.fan.cones:
        verdict = variety.verdicts[c]
        if verdict.verdict == "free":
            continue
        cid = lgf.cones[c].id
        if verdict.verdict != "monomial":
            raise LiftFailed(cid, f"no monomial certificate on cone {cid}")
        m = verdict.monomial
        chosen = None
        for f, source, exact in _lift_candidates(gens, polys, c, m, lgf.tail_degree):
            # for truncated candidates only the known terms can be checked
            if _check_lift(f, m, c):
                chosen = (monic_at(f, m), source, exact)
                break
        if chosen is None:
            raise LiftFailed(cid)
        f, source, exact = chosen
        series = Series(n, f, None if exact else lgf.tail_degree)
        for prev in out:
            if prev.element.same_terms(series):
                prev.cone_ids.append(cid)
                break
        else:
            out.append(LiftedElement(series, m, [cid], source, exact))
    return out


def monic_at(f: dict, m: Exponent) -> dict:
    c = f[m]
    return {e: v / c for e, v in f.items()}

