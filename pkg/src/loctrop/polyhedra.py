"""Exact rational polyhedral cones (H-representation) and fans.

Everything is done over Q.  Feasibility questions are answered by
Fourier-Motzkin elimination with back-substitution, which is plenty for the
ambient dimensions used here (n <= 4).

Canonical form of a cone ``{u : E u = 0, A u >= 0}``:

* implied equalities are promoted into ``E``;
* ``E`` is replaced by its reduced row echelon form, pivots taken from the
  rightmost columns, each row scaled to a primitive integer vector whose first
  nonzero entry is positive;
* each inequality is reduced modulo that echelon form (pivot columns zeroed),
  scaled to a primitive integer vector, redundant ones are dropped;
* both lists are sorted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .core import Stratum
from .errors import NotAFan, OriginOnly

IntVec = tuple[int, ...]


# linear algebra over Q -------------------------------------------------------

def primitive(vec: Sequence, *, sign_normalize: bool = False) -> IntVec:
    """Scale a rational vector to a primitive integer vector (positive factor)."""
    fr = [Fraction(x) for x in vec]
    if not any(fr):
        return tuple(0 for _ in fr)
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    if sign_normalize:
        first = next(x for x in ints if x)
        if first < 0:
            ints = [-x for x in ints]
    return tuple(ints)


def rref_right(rows: Iterable[Sequence], n: int) -> list[list[Fraction]]:
    """Reduced row echelon form with pivots chosen from the rightmost columns."""
    mat = [[Fraction(x) for x in r] for r in rows]
    out: list[list[Fraction]] = []
    pivots: list[int] = []
    r = 0
    for col in reversed(range(n)):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        pv = mat[r][col]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    out = mat[:r]
    return [row for row in out]


def _pivot(row: Sequence[Fraction]) -> int:
    return max(i for i, x in enumerate(row) if x != 0)


def reduce_mod(vec: Sequence, echelon: list[list[Fraction]]) -> list[Fraction]:
    v = [Fraction(x) for x in vec]
    for row in echelon:
        p = _pivot(row)
        if v[p] != 0:
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]
    return v


def kernel_basis(rows: Sequence[Sequence], n: int) -> list[list[Fraction]]:
    ech = rref_right(rows, n)
    piv = {_pivot(r): r for r in ech}
    basis = []
    for free in range(n):
        if free in piv:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for p, row in piv.items():
            v[p] = -row[free]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], n: int) -> int:
    return len(rref_right(rows, n))


# Fourier-Motzkin ---------------------------------------------------------------

def _normalize_row(a: tuple, b: Fraction):
    g = math.gcd(*a)
    if g <= 1:
        return a, b
    return tuple(x // g for x in a), b / g


def _dedupe(rows):
    best: dict[tuple, Fraction] = {}
    for a, b in rows:
        a, b = _normalize_row(a, b)
        if a in best:
            if b > best[a]:
                best[a] = b
        else:
            best[a] = b
    return list(best.items())


def _integral(a: Sequence, b) -> tuple[tuple[int, ...], Fraction]:
    m = math.lcm(*(Fraction(x).denominator for x in a))
    return tuple(int(Fraction(x) * m) for x in a), Fraction(b) * m


def fm_point(rows: Sequence[tuple[Sequence, Fraction]], d: int) -> list[Fraction] | None:
    """Find ``t`` with ``a . t >= b`` for every row, or ``None`` if infeasible."""
    cur = _dedupe(_integral(a, b) for a, b in rows)
    levels = []
    for k in range(d):
        levels.append(cur)
        pos, neg, nxt = [], [], []
        for a, b in cur:
            if a[k] > 0:
                pos.append((a, b))
            elif a[k] < 0:
                neg.append((a, b))
            else:
                nxt.append((a, b))
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = ap[k], -an[k]
                g = math.gcd(cp, cn)
                cp, cn = cp // g, cn // g
                a = tuple(cn * x + cp * y for x, y in zip(ap, an))
                nxt.append((a, cn * bp + cp * bn))
        cur = []
        for a, b in _dedupe(nxt):
            if not any(a):
                if b > 0:
                    return None
                continue
            cur.append((a, b))
    if any(b > 0 for a, b in cur):
        return None
    t = [Fraction(0)] * d
    for k in reversed(range(d)):
        lo = hi = None
        for a, b in levels[k]:
            if a[k] == 0:
                continue
            rest = sum((a[j] * t[j] for j in range(k + 1, d)), Fraction(0))
            bound = (b - rest) / a[k]
            if a[k] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = min(Fraction(0), hi)
        elif hi is None:
            val = max(Fraction(0), lo)
        else:
            val = Fraction(0) if lo <= 0 <= hi else lo
        t[k] = val
    return t


def solve(equalities: Sequence[Sequence], inequalities: Sequence[Sequence],
          extra: Sequence[tuple[Sequence, Fraction]] = (), n: int | None = None):
    """Point ``u`` with ``E u = 0``, ``A u >= 0`` and ``c . u >= b`` for extras."""
    if n is None:
        n = len((list(equalities) + list(inequalities) + [c for c, _ in extra])[0])
    basis = [primitive(v) for v in kernel_basis(equalities, n)]
    d = len(basis)
    rows = []
    for a in inequalities:
        rows.append(([sum((Fraction(a[i]) * v[i] for i in range(n)), Fraction(0)) for v in basis], Fraction(0)))
    for c, b in extra:
        rows.append(([sum((Fraction(c[i]) * v[i] for i in range(n)), Fraction(0)) for v in basis], Fraction(b)))
    if d == 0:
        return [Fraction(0)] * n if all(b <= 0 for _, b in rows) else None
    t = fm_point(rows, d)
    if t is None:
        return None
    return [sum((t[j] * basis[j][i] for j in range(d)), Fraction(0)) for i in range(n)]


# cones -------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalCone:
    ambient_dim: int
    equalities: tuple[IntVec, ...] = ()
    inequalities: tuple[IntVec, ...] = ()
    canonical: bool = field(default=False, compare=False)

    @property
    def dim(self) -> int:
        c = self if self.canonical else canonicalize(self)
        return self.ambient_dim - len(c.equalities)

    @property
    def key(self):
        return (self.equalities, self.inequalities)

    def contains(self, u: Sequence) -> bool:
        return all(_dot(a, u) == 0 for a in self.equalities) and all(
            _dot(a, u) >= 0 for a in self.inequalities
        )

    def contains_relint(self, u: Sequence) -> bool:
        """Membership in the relative interior (canonical form required)."""
        c = self if self.canonical else canonicalize(self)
        return all(_dot(a, u) == 0 for a in c.equalities) and all(
            _dot(a, u) > 0 for a in c.inequalities
        )

    def is_origin(self) -> bool:
        return self.dim == 0

    def describe(self) -> str:
        parts = [f"{_fmt(a)} = 0" for a in self.equalities]
        parts += [f"{_fmt(a)} >= 0" for a in self.inequalities]
        return "{" + ", ".join(parts) + "}" if parts else "R^%d" % self.ambient_dim


def _fmt(a: IntVec) -> str:
    out = ""
    for i, x in enumerate(a):
        if not x:
            continue
        mag = "" if abs(x) == 1 else str(abs(x))
        term = f"{mag}u{i + 1}"
        if not out:
            out = ("-" if x < 0 else "") + term
        else:
            out += (" - " if x < 0 else " + ") + term
    return out or "0"


def _dot(a, u) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, u)), Fraction(0))


def cone(n: int, equalities: Iterable = (), inequalities: Iterable = ()) -> RationalCone:
    return RationalCone(
        n,
        tuple(primitive(a) for a in equalities if any(a)),
        tuple(primitive(a) for a in inequalities if any(a)),
    )


def canonicalize(c: RationalCone) -> RationalCone:
    if c.canonical:
        return c
    return _canonicalize_cached(c.ambient_dim, c.equalities, c.inequalities)


@lru_cache(maxsize=200_000)
def _canonicalize_cached(n: int, eqs: tuple, ineqs: tuple) -> RationalCone:
    eqs = [primitive(a) for a in eqs if any(a)]
    ineqs = sorted({primitive(a) for a in ineqs if any(a)})
    strict_ok = []
    # one strictly interior point rules out implicit equalities at once
    if ineqs and solve(eqs, [], [(a, 1) for a in ineqs], n) is not None:
        strict_ok, ineqs = ineqs, []
    for a in ineqs:
        if solve(eqs, ineqs, [(a, 1)], n) is None:
            eqs.append(a)
        else:
            strict_ok.append(a)
    ech = rref_right(eqs, n)
    canon_eqs = sorted(primitive(r, sign_normalize=True) for r in ech)
    reduced = sorted({primitive(reduce_mod(a, ech)) for a in strict_ok} - {tuple([0] * n)})
    kept = list(reduced)
    for a in reduced:
        others = [b for b in kept if b != a]
        if solve(canon_eqs, others, [(tuple(-x for x in a), 1)], n) is None:
            kept = others
    return RationalCone(n, tuple(canon_eqs), tuple(sorted(kept)), canonical=True)


def intersect(a: RationalCone, b: RationalCone) -> RationalCone:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return canonicalize(
        RationalCone(a.ambient_dim, a.equalities + b.equalities, a.inequalities + b.inequalities)
    )


def relative_interior_point(c: RationalCone) -> tuple[Fraction, ...]:
    c = canonicalize(c)
    n = c.ambient_dim
    if c.dim == 0:
        raise OriginOnly("the zero cone has no nonzero interior point")
    if not c.inequalities:
        total = [sum(col) for col in zip(*kernel_basis(c.equalities, n))]
        if not any(total):
            total = kernel_basis(c.equalities, n)[0]
        return tuple(Fraction(x) for x in primitive(total))
    total = [Fraction(0)] * n
    for a in c.inequalities:
        p = solve(c.equalities, c.inequalities, [(a, 1)], n)
        total = [x + y for x, y in zip(total, p)]
    return tuple(Fraction(x) for x in primitive(total))


def interior_sample(c: RationalCone) -> tuple[Fraction, ...]:
    """Relative-interior point, with the origin for the zero cone."""
    c = canonicalize(c)
    if c.dim == 0:
        return tuple(Fraction(0) for _ in range(c.ambient_dim))
    return relative_interior_point(c)


def orthant(n: int) -> RationalCone:
    return canonicalize(cone(n, (), [_unit(n, i) for i in range(n)]))


def origin(n: int) -> RationalCone:
    return canonicalize(cone(n, [_unit(n, i) for i in range(n)], ()))


def stratum_closure(lam: Stratum) -> RationalCone:
    n = lam.n
    return canonicalize(
        cone(n, [_unit(n, i) for i in sorted(lam.zero_set)], [_unit(n, i) for i in lam.support])
    )


def _unit(n: int, i: int) -> IntVec:
    return tuple(1 if j == i else 0 for j in range(n))


def cone_stratum(c: RationalCone) -> Stratum:
    """The stratum containing the relative interior of a cone inside the orthant."""
    p = interior_sample(c)
    return Stratum(c.ambient_dim, frozenset(i for i, x in enumerate(p) if x == 0))


def facets(c: RationalCone) -> list[tuple[IntVec, RationalCone]]:
    c = canonicalize(c)
    out = []
    for a in c.inequalities:
        rest = tuple(b for b in c.inequalities if b != a)
        out.append((a, canonicalize(RationalCone(c.ambient_dim, c.equalities + (a,), rest))))
    return out


def faces(c: RationalCone) -> set[RationalCone]:
    c = canonicalize(c)
    return set(_faces_cached(c))


@lru_cache(maxsize=50_000)
def _faces_cached(c: RationalCone) -> frozenset:
    found = {c}
    for _, f in facets(c):
        found |= _faces_cached(f)
    return frozenset(found)


def is_face(f: RationalCone, c: RationalCone) -> bool:
    return canonicalize(f) in faces(c)


def rays(c: RationalCone) -> list[IntVec]:
    """Primitive generators of the one-dimensional faces (pointed cones)."""
    out = set()
    for f in faces(c):
        if f.dim == 1:
            out.add(primitive(relative_interior_point(f)))
    return sorted(out)


# fans --------------------------------------------------------------------------

@dataclass
class Fan:
    ambient_dim: int
    cones: list[RationalCone]
    incidence: list[tuple[int, int]]

    def maximal(self) -> list[RationalCone]:
        return [c for c in self.cones if not any(
            c != d and c in faces(d) for d in self.cones)]

    def contains(self, u: Sequence) -> bool:
        return any(c.contains(u) for c in self.cones)

    def to_json(self, extra=None) -> dict:
        """Fan JSON; ``extra(cone)`` may return fields merged into each entry."""
        all_rays = sorted({r for c in self.cones for r in rays(c)})
        index = {r: i for i, r in enumerate(all_rays)}
        entries = []
        for c in self.cones:
            entry = {
                "rays": sorted(index[r] for r in rays(c)),
                "equalities": [list(a) for a in c.equalities],
                "inequalities": [list(a) for a in c.inequalities],
                "dim": c.dim,
            }
            if extra is not None:
                entry.update(extra(c))
            entries.append(entry)
        entries.sort(key=lambda e: (e["dim"], e["rays"], e["equalities"], e["inequalities"]))
        return {"ambient": self.ambient_dim, "rays": [list(r) for r in all_rays], "cones": entries}


def sort_cones(cones: Iterable[RationalCone]) -> list[RationalCone]:
    return sorted(cones, key=lambda c: (c.dim, rays(c), c.equalities, c.inequalities))


def validate_fan(cones: Sequence[RationalCone], n: int | None = None) -> Fan:
    """Close under faces and check that pairwise intersections are common faces."""
    canon = [canonicalize(c) for c in cones]
    if n is None:
        n = canon[0].ambient_dim if canon else 0
    uniq = list(dict.fromkeys(canon))
    for i, a in enumerate(uniq):
        fa = faces(a)
        for b in uniq[i + 1:]:
            m = intersect(a, b)
            if m not in fa or m not in faces(b):
                raise NotAFan(a, b)
    closure = set()
    for c in uniq:
        closure |= faces(c)
    ordered = sort_cones(closure)
    pos = {c: i for i, c in enumerate(ordered)}
    incidence = []
    for c in ordered:
        for _, f in facets(c):
            incidence.append((pos[f], pos[c]))
    return Fan(n, ordered, sorted(set(incidence)))
