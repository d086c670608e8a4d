"""Independent cross-checks: brute-force staircases, grids, global min-twice,
Newton polygons, homogeneity on rays and a polynomial-ring route for initial
ideals.  Nothing here calls the staircase, tropical or localgb algorithms.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .core import Exponent, Series, as_weight
from .errors import NotBivariate
from .polyhedra import RationalCone, rays

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    max_denominator: int = 8
    box_degree: int = 8
    sample_count: int = 200
    seed: int = 0

    def __post_init__(self):
        if min(self.max_denominator, self.box_degree, self.sample_count) <= 0:
            raise ValueError("grid parameters must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def farey(bound: int) -> list[Fraction]:
    """Rationals in [0, 1] with denominator at most ``bound``, sorted."""
    return sorted({Fraction(p, q) for q in range(1, bound + 1) for p in range(q + 1)})


def grid(n: int, bound: int) -> list[tuple[Fraction, ...]]:
    """All weights in [0, 1]^n whose entries have denominator at most ``bound``."""
    return list(product(farey(bound), repeat=n))


# staircases --------------------------------------------------------------------------------

def brute_staircase(S: Iterable[Exponent], box: int) -> tuple[Exponent, ...]:
    """Minimal points of ``S + N^n`` found by scanning every lattice point of ``[0, box]^n``."""
    S = [tuple(a) for a in S]
    if not S:
        return ()
    n = len(S[0])
    if any(x > box for a in S for x in a):
        raise ValueError("support leaves the box")

    def upper(p):
        return any(all(a[i] <= p[i] for i in range(n)) for a in S)

    out = []
    for p in product(range(box + 1), repeat=n):
        if not upper(p):
            continue
        lower = (p[:i] + (p[i] - 1,) + p[i + 1:] for i in range(n) if p[i] > 0)
        if not any(upper(q) for q in lower):
            out.append(p)
    return tuple(sorted(out))


# tropical membership -------------------------------------------------------------------------

def global_min_twice(f: Series, w: Sequence) -> bool:
    """Minimum of ``w . alpha`` over the full support attained at least twice."""
    w = as_weight(w)
    vals = sorted(sum((a * b for a, b in zip(w, e)), Fraction(0)) for e, _ in f.terms)
    return len(vals) >= 2 and vals[0] == vals[1]


def initial_is_monomial(f: Series, w: Sequence) -> bool:
    return not global_min_twice(f, w)


def homogeneity_check(h: Series, cone: RationalCone) -> bool:
    """``h`` has a single weight value at every ray generator of ``cone``."""
    for r in rays(cone):
        if len({sum(a * b for a, b in zip(r, e)) for e, _ in h.terms}) > 1:
            return False
    return True


# Newton polygons ---------------------------------------------------------------------------

def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices of the compact lower-left boundary of conv(points) + R^2_{>=0}."""
    pts = sorted(set(points))
    # keep, for each x, the lowest y; then only points that improve on the running minimum
    chain = []
    best_y = None
    for x, y in pts:
        if best_y is None or y < best_y:
            chain.append((x, y))
            best_y = y
    hull: list[tuple[int, int]] = []
    for p in chain:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it is strictly below the segment
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_edges(f: Series) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    if f.n != 2:
        raise NotBivariate(f"expected 2 variables, got {f.n}")
    hull = _lower_hull([e for e, _ in f.terms])
    return list(zip(hull, hull[1:]))


def newton_polygon_rays(f: Series) -> list[tuple[int, int]]:
    """Primitive inward normals of the compact Newton edges, in the open quadrant."""
    if f.n != 2:
        raise NotBivariate(f"expected 2 variables, got {f.n}")
    if f.is_zero() or f.coeff((0, 0)) != 0:
        raise ValueError("curve must pass through the origin")
    out = set()
    for (a1, b1), (a2, b2) in newton_edges(f):
        u = (b1 - b2, a2 - a1)
        g = gcd(*u)
        u = (u[0] // g, u[1] // g)
        if u[0] > 0 and u[1] > 0:
            out.add(u)
    return sorted(out)


def edge_discriminants(f: Series) -> list[Fraction]:
    """Discriminant of each edge polynomial, as a univariate polynomial in the edge parameter."""
    import sympy

    t = sympy.Symbol("t")
    coeffs = f.as_dict()
    out = []
    for (a1, b1), (a2, b2) in newton_edges(f):
        g = gcd(a2 - a1, b1 - b2)
        da, db = (a2 - a1) // g, (b1 - b2) // g
        poly = sum(
            sympy.Rational(coeffs.get((a1 + k * da, b1 - k * db), 0)) * t ** k for k in range(g + 1)
        )
        p = sympy.Poly(poly, t)
        out.append(Fraction(str(sympy.discriminant(p))) if p.degree() >= 2 else Fraction(1))
    return out


# polynomial-ring route for initial ideals ----------------------------------------------------

def polynomial_route_has_monomial(gens: Sequence[Series], w: Sequence[int]) -> bool:
    """Whether ``in_w(I)`` contains a monomial, via a t-deformation in the polynomial ring.

    ``w`` must be a positive integer vector.  The initial ideal is the
    ``t = 0`` fibre of ``<f(t^w x)> : t^inf``; it contains a monomial iff its
    saturation by the product of the variables is the unit ideal.
    """
    import sympy

    n = gens[0].n
    if any(int(a) != a or a <= 0 for a in w):
        raise ValueError("the polynomial route needs a positive integer weight")
    w = [int(a) for a in w]
    xs = sympy.symbols(f"x1:{n + 1}")
    t, s, z = sympy.symbols("t s z")

    def deformed(f: Series):
        # f(t^w x) / t^(w-order of f)
        low = min(sum(a * b for a, b in zip(w, e)) for e, _ in f.terms)
        return sum(
            sympy.Rational(c.numerator, c.denominator)
            * t ** (sum(a * b for a, b in zip(w, e)) - low)
            * sympy.Mul(*[xs[i] ** e[i] for i in range(n)])
            for e, c in f.terms
        )

    family = [sympy.expand(deformed(f)) for f in gens if not f.is_zero()]
    G = sympy.groebner(family + [1 - s * t], s, t, *xs, order="lex")
    fibre = [sympy.expand(g.subs(t, 0)) for g in G.exprs if not g.has(s)]
    fibre = [g for g in fibre if g != 0]
    if not fibre:
        return False
    prod_x = sympy.Mul(*xs)
    # being the unit ideal does not depend on the order
    H = sympy.groebner(fibre + [1 - z * prod_x], z, *xs, order="grevlex")
    return list(H.exprs) == [1]


# random instances ----------------------------------------------------------------------------

def random_support(rng: random.Random, n: int, size: int, box: int) -> list[Exponent]:
    pts: set = set()
    while len(pts) < size:
        pts.add(tuple(rng.randint(0, box) for _ in range(n)))
    return sorted(pts)


def _coeff(rng: random.Random) -> Fraction:
    c = 0
    while c == 0:
        c = rng.randint(-9, 9)
    return Fraction(c, rng.choice((1, 1, 2, 3)))


def random_series(rng: random.Random, n: int, degree: int, terms: int = 5,
                  truncated: bool = True) -> Series:
    """Series through the origin with at least two terms."""
    cells = [e for e in product(range(degree + 1), repeat=n) if 0 < sum(e) <= degree]
    chosen = rng.sample(cells, min(max(terms, 2), len(cells)))
    return Series(n, {e: _coeff(rng) for e in chosen}, degree if truncated else None)


def random_weight(rng: random.Random, n: int, zero_set: Iterable[int] = (), bound: int = 8) -> tuple[Fraction, ...]:
    zero = set(zero_set)
    return tuple(
        Fraction(0) if i in zero else Fraction(rng.randint(1, 3 * bound), rng.randint(1, bound))
        for i in range(n)
    )


def random_local_weight(rng: random.Random, n: int, bound: int = 8) -> tuple[Fraction, ...]:
    """A weight in a uniformly chosen stratum."""
    zero = {i for i in range(n) if rng.random() < 0.5}
    return random_weight(rng, n, zero, bound)


def generic_curve(rng: random.Random, degree: int = 4, terms: int = 4, max_tries: int = 100) -> Series:
    """Bivariate curve through the origin whose edge polynomials have nonzero discriminants."""
    for attempt in range(max_tries):
        f = random_series(rng, 2, degree, terms, truncated=False)
        f = Series(2, {e: Fraction(rng.choice([-1, 1]) * rng.randint(1, 9)) for e, _ in f.terms})
        if all(d != 0 for d in edge_discriminants(f)):
            return f
        log.info("resampling curve %s: zero edge discriminant (attempt %d)", f.to_string(), attempt)
    raise RuntimeError("could not draw a generic curve")


def random_ideal(rng: random.Random, n: int, max_gens: int = 3, degree: int = 4,
                 count: int | None = None) -> list[Series]:
    """Polynomial generators; usually at most n - 1 of them so the variety is not trivially empty.

    ``count`` fixes the number of generators instead.
    """
    if count is not None:
        k = count
    elif rng.random() < 0.25:
        k = rng.randint(1, max_gens)
    else:
        k = rng.randint(1, max(1, min(max_gens, n - 1)))
    return [random_series(rng, n, degree, rng.randint(2, 4), truncated=False) for _ in range(k)]
