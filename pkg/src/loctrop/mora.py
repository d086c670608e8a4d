"""Monomial orders, Mora normal form and standard bases over Q.

Polynomials are plain ``dict`` objects mapping exponent tuples to Fractions.
A :class:`MonomialOrder` is a stack of weight vectors followed by a fixed
tiebreak.  For a local order the leading term has the *smallest* stacked
weight and the tiebreak is local degree-reverse-lexicographic ("ds": lower
total degree wins, then reverse lexicographic), so 1 is the largest monomial.
A global order uses the largest stacked weight and graded revlex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heapify, heappop, heappush
from itertools import product
from math import lcm
from typing import Sequence

from gmpy2 import mpq

from .core import Exponent, Series, as_weight, dominates

Poly = dict


@dataclass(frozen=True)
class MonomialOrder:
    n: int
    weights: tuple[tuple[Fraction, ...], ...] = ()
    local: bool = True
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def weighted(cls, *weights, local: bool = True) -> "MonomialOrder":
        ws = tuple(as_weight(w) for w in weights)
        return cls(len(ws[0]), ws, local)

    @classmethod
    def ds(cls, n: int) -> "MonomialOrder":
        return cls(n, (), True)

    def __post_init__(self):
        # scaling a weight by a positive integer does not change the order
        ints = []
        for w in self.weights:
            den = lcm(*(Fraction(x).denominator for x in w)) if w else 1
            ints.append(tuple(int(Fraction(x) * den) for x in w))
        object.__setattr__(self, "_int_weights", tuple(ints))

    def key(self, e: Exponent):
        k = self._cache.get(e)
        if k is None:
            s = -1 if self.local else 1
            k = (
                tuple(s * sum(a * b for a, b in zip(w, e)) for w in self._int_weights),
                s * sum(e),
                tuple(-x for x in reversed(e)),
            )
            self._cache[e] = k
        return k

    def leading(self, f: Poly) -> Exponent:
        return max(f, key=self.key)

    def sorted_exps(self, f: Poly) -> list[Exponent]:
        """Exponents of ``f`` from largest (leading) to smallest."""
        return sorted(f, key=self.key, reverse=True)

    def describe(self) -> str:
        ws = ", ".join("(" + ",".join(str(x) for x in w) + ")" for w in self.weights)
        tb = "local degrevlex (ds)" if self.local else "degrevlex (dp)"
        return f"weights [{ws}] then {tb}"


# dict polynomial arithmetic ------------------------------------------------------------

def padd(f: Poly, g: Poly, c=1) -> Poly:
    out = dict(f)
    for e, v in g.items():
        x = out.get(e, 0) + c * v
        if x:
            out[e] = x
        else:
            out.pop(e, None)
    return out


def pmul_term(f: Poly, mono: Exponent, c) -> Poly:
    return {tuple(a + b for a, b in zip(e, mono)): c * v for e, v in f.items()}


def pmul(f: Poly, g: Poly) -> Poly:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def truncate(f: Poly, degree: int) -> Poly:
    return {e: c for e, c in f.items() if sum(e) <= degree}


def to_poly(f: Series) -> Poly:
    return {e: Fraction(c) for e, c in f.terms}


def to_series(f: Poly, n: int, truncation: int | None = None) -> Series:
    return Series(n, f, truncation)


def monic(f: Poly, order: MonomialOrder) -> Poly:
    c = f[order.leading(f)]
    return {e: v / c for e, v in f.items()}


def ecart(f: Poly, lead: Exponent) -> int:
    return max(sum(e) for e in f) - sum(lead)


def initial_part(f: Poly, weights: Sequence[Sequence]) -> Poly:
    """Terms of minimal weight, refined successively through a weight stack."""
    cur = dict(f)
    for w in weights:
        if not cur:
            break
        vals = {e: sum((Fraction(a) * b for a, b in zip(w, e)), Fraction(0)) for e in cur}
        m = min(vals.values())
        cur = {e: c for e, c in cur.items() if vals[e] == m}
    return cur


# Mora normal form -----------------------------------------------------------------------

@dataclass
class DivisionTrace:
    """``unit * f == sum(q_i * g_i) + remainder`` with ``unit`` of leading exponent 0.

    With a ``cutoff`` the identity holds modulo terms of total degree >= cutoff.
    """

    unit: Poly
    quotients: list[Poly]
    remainder: Poly
    cutoff: int | None = None

    def replays(self, f: Poly, G: Sequence[Poly], order: MonomialOrder) -> bool:
        """Check the identity exactly, or modulo ``m^cutoff`` when a cutoff was used."""
        lhs = pmul(self.unit, f)
        rhs = dict(self.remainder)
        for q, g in zip(self.quotients, G):
            rhs = padd(rhs, pmul(q, g))
        diff = padd(lhs, rhs, -1)
        if self.cutoff is not None:
            diff = truncate(diff, self.cutoff - 1)
        if diff:
            return False
        return bool(self.unit) and not any(order.leading(self.unit))


class StepBudgetExceeded(RuntimeError):
    pass


def mora_normal_form(f: Poly, G: Sequence[Poly], order: MonomialOrder, trace: bool = False,
                     cutoff: int | None = None, max_steps: int | None = None):
    """Weak normal form of ``f`` with respect to ``G`` (ecart-driven selection).

    Returns the remainder, or ``(remainder, DivisionTrace)`` when ``trace`` is set.
    With ``cutoff`` every term of total degree >= cutoff is dropped, which is
    exact modulo ``m^cutoff``.  ``max_steps`` bounds the number of reductions.
    """
    k = len(G)
    cut = (lambda p: p) if cutoff is None else (lambda p: truncate(p, cutoff - 1))
    h = cut(dict(f))
    rep_h = ({(0,) * order.n: Fraction(1)}, [dict() for _ in range(k)]) if trace else None
    T = []
    for i, g in enumerate(G):
        if not g:
            continue
        lead = order.leading(g)
        rep = ({}, [({(0,) * order.n: Fraction(1)} if j == i else {}) for j in range(k)]) if trace else None
        T.append((g, lead, ecart(g, lead), rep))
    steps = 0
    while h:
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise StepBudgetExceeded(f"normal form needed more than {max_steps} reductions")
        L = order.leading(h)
        best = None
        for entry in T:
            if dominates(entry[1], L) and (best is None or entry[2] < best[2]):
                best = entry
        if best is None:
            break
        g, lead, e_g, rep_g = best
        e_h = ecart(h, L)
        if e_g > e_h:
            T.append((dict(h), L, e_h, rep_h and (dict(rep_h[0]), [dict(q) for q in rep_h[1]])))
        mono = tuple(a - b for a, b in zip(L, lead))
        c = h[L] / g[lead]
        h = cut(padd(h, pmul_term(g, mono, c), -1))
        if trace:
            a = cut(padd(rep_h[0], pmul_term(rep_g[0], mono, c), -1))
            qs = [cut(padd(q, pmul_term(qg, mono, c), -1)) for q, qg in zip(rep_h[1], rep_g[1])]
            rep_h = (a, qs)
    if not trace:
        return h
    unit, qs = rep_h
    # h = unit*f + sum qs_i g_i, i.e. unit*f = sum(-qs_i) g_i + h
    return h, DivisionTrace(unit, [{e: -c for e, c in q.items()} for q in qs], h, cutoff)


# standard bases ---------------------------------------------------------------------------

def _spoly(f: Poly, g: Poly, order: MonomialOrder, lf=None, lg=None) -> Poly:
    lf = lf or order.leading(f)
    lg = lg or order.leading(g)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    return padd(pmul_term(f, mf, 1 / f[lf]), pmul_term(g, mg, 1 / g[lg]), -1)


def _complete(G: list[Poly], order) -> list[Poly]:
    """Buchberger/Mora completion of monic ``G``; returns the grown list."""
    leads = [order.leading(g) for g in G]
    heap: list = []
    pending: set = set()

    def push(i, j):
        a, b = leads[i], leads[j]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            return  # coprime leading monomials
        lcm_ = tuple(max(x, y) for x, y in zip(a, b))
        heappush(heap, (sum(lcm_), lcm_, i, j))
        pending.add((i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)
    while heap:
        _, lcm_, i, j = heappop(heap)
        pending.discard((i, j))
        if any(
            k != i and k != j and dominates(leads[k], lcm_)
            and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
            for k in range(len(G))
        ):
            continue  # chain criterion
        h = mora_normal_form(_spoly(G[i], G[j], order, leads[i], leads[j]), G, order)
        if h:
            G.append(monic(h, order))
            leads.append(order.leading(G[-1]))
            for k in range(len(G) - 1):
                push(k, len(G) - 1)
    return G


@dataclass(frozen=True)
class HomogenizedOrder:
    """Degree-first order on K[t, x] refining ``base`` on the x-part (t is coordinate 0)."""

    base: MonomialOrder
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return self.base.n + 1

    def key(self, e: Exponent):
        k = self._cache.get(e)
        if k is None:
            k = self._cache[e] = (sum(e), self.base.key(e[1:]))
        return k

    def leading(self, f: Poly) -> Exponent:
        return max(f, key=self.key)


def _homogenize(f: Poly) -> Poly:
    d = max(sum(e) for e in f)
    return {(d - sum(e),) + e: c for e, c in f.items()}


def standard_basis_raw(gens: Sequence[Poly], order: MonomialOrder) -> list[Poly]:
    """Minimal, monic standard basis of ``<gens>`` for ``order``.

    Local orders go through Lazard's homogenization: a Gröbner basis of the
    homogenized generators for the degree-first order dehomogenizes to a
    standard basis.  This avoids the coefficient and degree swell that Mora's
    normal form shows inside S-pair completion.
    """
    polys = [{e: Fraction(c) for e, c in f.items() if c} for f in gens]
    polys = [f for f in polys if f]
    if not polys:
        return []
    if not order.local:
        return minimalize(_complete([monic(f, order) for f in polys], order), order)
    hom = HomogenizedOrder(order)
    H = _complete([monic(_homogenize(f), hom) for f in polys], hom)
    G = []
    for h in H:
        g: dict = {}
        for e, c in h.items():
            g[e[1:]] = g.get(e[1:], 0) + c
        g = {e: c for e, c in g.items() if c}
        if g:
            G.append(g)
    return minimalize(G, order)


def minimalize(G: Sequence[Poly], order: MonomialOrder) -> list[Poly]:
    leads = [order.leading(g) for g in G]
    keep = []
    for i, g in enumerate(G):
        li = leads[i]
        redundant = False
        for j, lj in enumerate(leads):
            if j == i:
                continue
            if dominates(lj, li) and (lj != li or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(monic(g, order))
    keep.sort(key=lambda g: order.key(order.leading(g)), reverse=True)
    return keep


def truncation_rays(G: Sequence[Poly], order) -> list[tuple[int, ...]]:
    """Rays of the cone of ``u >= 0`` with ``u . tau >= u . lead`` for every term of ``G``.

    Reducing a term ``x^gamma`` by ``G`` only creates terms whose ``u``-weight is
    at least ``u . gamma`` for each such ``u``.  The cone contains a positive
    vector, so the rays jointly bound a finite region.
    """
    from . import polyhedra as ph

    n = order.n
    ineqs = {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    for g in G:
        lead = order.leading(g)
        tail = [e for e in g if e != lead]
        # u >= 0, so terms dominating another tail term add nothing
        for e in tail:
            if not any(f != e and dominates(f, e) for f in tail):
                ineqs.add(ph.primitive(tuple(a - b for a, b in zip(e, lead))))
    return ph.rays(ph.canonicalize(ph.cone(n, (), sorted(ineqs))))


def truncation_caps(leads: Sequence[Exponent], rays, n: int, degree: int) -> list:
    """For each ray ``u`` the largest ``u``-weight of a standard monomial of degree <= ``degree``.

    Only standard monomials survive reduction, and everything created from a
    term of larger ``u``-weight keeps a larger ``u``-weight, so such terms can
    be dropped without touching the output up to ``degree``.
    """
    std = [e for d in range(degree + 1) for e in _monomials_of_degree(n, d)
           if not any(dominates(l, e) for l in leads)]
    return [(u, max((sum(a * b for a, b in zip(u, e)) for e in std), default=-1)) for u in rays]


def reduce_below(h: Poly, G: Sequence[Poly], leads: Sequence[Exponent], order, degree: int,
                 skip: Exponent | None = None, rays=None, caps=None) -> Poly:
    """Reduce every term of ``h`` (except ``skip``) lying in ``Exp = leads + N^n``.

    Subtracting ``c x^mu g_k`` only creates terms smaller than the one removed,
    so a single pass from the largest term down suffices.  The result is exact
    in total degree up to ``degree``; terms that cannot influence that part
    are discarded on the way (see ``truncation_caps``).
    """
    if caps is None:
        if rays is None:
            rays = truncation_rays(G, order)
        caps = truncation_caps(leads, rays, order.n, degree)

    verdicts: dict = {}

    def keep(e):
        ok = verdicts.get(e)
        if ok is None:
            ok = verdicts[e] = all(sum(a * b for a, b in zip(u, e)) <= cap for u, cap in caps)
        return ok

    # exact rationals from gmpy2 inside the loop; Fractions at the boundary
    work = {e: mpq(c.numerator, c.denominator) for e, c in h.items() if keep(e) or e == skip}
    reducers = [{e: mpq(c.numerator, c.denominator) for e, c in g.items()} for g in G]
    heap = [(_neg_key(order, e), e) for e in work]
    heapify(heap)
    seen: set = set()
    while heap:
        _, e = heappop(heap)
        if e in seen or e not in work or e == skip:
            continue
        seen.add(e)
        k = next((k for k, l in enumerate(leads) if dominates(l, e)), None)
        if k is None:
            continue
        g = reducers[k]
        mono = tuple(a - b for a, b in zip(e, leads[k]))
        c = work[e] / g[leads[k]]
        for x, v in g.items():
            x = tuple(a + b for a, b in zip(x, mono))
            if not keep(x):
                continue
            y = work.get(x, 0) - c * v
            if y:
                work[x] = y
                if x not in seen:
                    heappush(heap, (_neg_key(order, x), x))
            else:
                work.pop(x, None)
    return {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in work.items() if sum(e) <= degree}


def _neg_key(order, e):
    k = order.key(e)
    return (tuple(-x for x in k[0]), -k[1], tuple(-x for x in k[2]))


def reduce_tails(G: Sequence[Poly], order: MonomialOrder, degree: int) -> list[Poly]:
    """Reduce every non-leading term into the complement of Exp(I), exactly up to total ``degree``."""
    leads = [order.leading(g) for g in G]
    caps = truncation_caps(leads, truncation_rays(G, order), order.n, degree)
    return [reduce_below(g, G, leads, order, degree, skip=lead, caps=caps) for g, lead in zip(G, leads)]


def highest_corner_cutoff(G: Sequence[Poly], order: MonomialOrder) -> int | None:
    """A degree N with ``m^N`` inside ``<G>`` (local ring), or None if Exp has infinite complement.

    ``G`` must be a standard basis for the local ``order``.  If the monomials
    outside ``Exp`` are finitely many, say c of them, the quotient is Artinian
    of length c and ``m^c`` vanishes in it.  When the first weight of the order
    is positive (or the order is plain ds) the highest corner gives a sharper bound.
    """
    n = order.n
    leads = [order.leading(g) for g in G if g]
    if any(not any(l) for l in leads):
        return 0
    pure = []
    for i in range(n):
        p = [l[i] for l in leads if l[i] > 0 and sum(l) == l[i]]
        if not p:
            return None
        pure.append(min(p))
    outside = [e for e in product(*(range(p) for p in pure))
               if not any(dominates(l, e) for l in leads)]
    bounds = [max(len(outside), 1)]
    w = order._int_weights[0] if order.weights else None
    if w is None or not any(w):
        bounds.append(max(sum(e) for e in outside) + 1)
    elif all(x > 0 for x in w):
        d = max(sum(a * b for a, b in zip(w, e)) for e in outside)
        bounds.append(d // min(w) + 1)
    return min(bounds)


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for i in range(d + 1):
        for rest in _monomials_of_degree(n - 1, d - i):
            yield (i,) + rest


def is_unit_ideal(G: Sequence[Poly], order: MonomialOrder) -> bool:
    return any(not any(order.leading(g)) for g in G if g)


# saturation over the polynomial ring ------------------------------------------------------

def saturate_by_monomial(gens: Sequence[Poly], n: int, variables: Sequence[int]) -> list[Poly]:
    """Generators of ``<gens> : (prod x_i)^inf`` in Q[x], by Rabinowitsch elimination."""
    m = tuple(1 if i in variables else 0 for i in range(n))
    lifted = [{e + (0,): c for e, c in g.items()} for g in gens if g]
    lifted.append({(0,) * (n + 1): Fraction(1), m + (1,): Fraction(-1)})
    elim = tuple(Fraction(0) for _ in range(n)) + (Fraction(1),)
    order = MonomialOrder(n + 1, (elim,), local=False)
    G = standard_basis_raw(lifted, order)
    return [{e[:n]: c for e, c in g.items()} for g in G if all(e[n] == 0 for e in g)]
