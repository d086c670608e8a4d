"""Min-plus evaluation, tropical hypersurfaces and local tropical varieties.

Two semantics are offered for the principal and prevariety paths:

``definition``
    the stratum-wise union of hypersurfaces of the hat polynomials, with the
    origin always included (hat is 0 there by convention).
``monomial-test``
    ``w`` belongs iff ``in_w(<f>)`` contains no monomial in the graded ring.
    On a boundary stratum a class of exponents with a common projection
    contributes only if its zero-weight parts have two or more minimal
    elements; otherwise the initial form is a monomial times a unit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import polyhedra as ph
from .core import Exponent, Series, Stratum, as_weight, dot, enumerate_strata, stratum_of, support
from .errors import EmptyTropicalPolynomial, ZeroSeries
from .staircase import E0, TAIL_DOMINATED, hat_poly, minimal_staircase, stratum_staircase, tilde_poly

DEFINITION = "definition"
MONOMIAL_TEST = "monomial-test"
SEMANTICS = (DEFINITION, MONOMIAL_TEST)


@dataclass(frozen=True)
class TropicalPolynomial:
    """Finite min-plus polynomial; ``monomials`` maps exponent -> coefficient."""

    n: int
    monomials: tuple[tuple[Fraction, Exponent], ...]

    @classmethod
    def make(cls, n: int, monomials) -> "TropicalPolynomial":
        best: dict[Exponent, Fraction] = {}
        for c, e in monomials:
            e = tuple(e)
            c = Fraction(c)
            best[e] = min(c, best.get(e, c))
        return cls(n, tuple(sorted((c, e) for e, c in best.items())))

    @classmethod
    def from_series(cls, f: Series) -> "TropicalPolynomial":
        # constant coefficients have order 0
        return cls.make(f.n, [(Fraction(0), e) for e in support(f)])

    @property
    def exponents(self) -> list[Exponent]:
        return sorted(e for _, e in self.monomials)

    def is_empty(self) -> bool:
        return not self.monomials


def trop(f: Series) -> TropicalPolynomial:
    return TropicalPolynomial.from_series(f)


def _values(F: TropicalPolynomial, w) -> list[tuple[Fraction, Exponent]]:
    if F.is_empty():
        raise EmptyTropicalPolynomial("tropical polynomial has no monomials")
    return [(c + dot(w, e), e) for c, e in F.monomials]


def trop_eval(F: TropicalPolynomial, w: Sequence) -> Fraction:
    return min(v for v, _ in _values(F, as_weight(w)))


def argmin(F: TropicalPolynomial, w: Sequence) -> list[Exponent]:
    vals = _values(F, as_weight(w))
    m = min(v for v, _ in vals)
    return sorted(e for v, e in vals if v == m)


def min_twice(F: TropicalPolynomial, w: Sequence) -> bool:
    if F.is_empty():
        return False
    return len(argmin(F, w)) >= 2


# hypersurface cones --------------------------------------------------------------

def _region(n: int, lam: Stratum, alpha: Exponent, others: Sequence[Exponent],
            tie: Sequence[Exponent] = ()) -> ph.RationalCone:
    eqs = [ph._unit(n, i) for i in sorted(lam.zero_set)]
    eqs += [tuple(a - b for a, b in zip(alpha, beta)) for beta in tie]
    ineqs = [ph._unit(n, i) for i in lam.support]
    ineqs += [tuple(g - a for g, a in zip(gamma, alpha)) for gamma in others]
    return ph.canonicalize(ph.cone(n, eqs, ineqs))


def meets_stratum(c: ph.RationalCone, lam: Stratum) -> bool:
    p = ph.interior_sample(c)
    return all(p[i] == 0 for i in lam.zero_set) and all(p[i] > 0 for i in lam.support)


def _drop_faces(pieces):
    """Keep pieces whose cone is not a proper face of another piece's cone."""
    uniq = {}
    for c, cert in pieces:
        uniq.setdefault(c, cert)
    out = []
    for c, cert in uniq.items():
        if any(d != c and c in ph.faces(d) for d in uniq):
            continue
        out.append((c, cert))
    return sorted(out, key=lambda p: (p[0].dim, ph.rays(p[0]), p[0].key))


def hypersurface_pieces(F: TropicalPolynomial, lam: Stratum):
    """(cone, witness pair) for every tie region meeting the open stratum."""
    if any(c != 0 for c, _ in F.monomials):
        raise ValueError("tie regions are cones only for zero tropical coefficients")
    exps = F.exponents
    pieces = []
    for alpha, beta in itertools.combinations(exps, 2):
        c = _region(F.n, lam, alpha, exps, [beta])
        if meets_stratum(c, lam):
            pieces.append((c, WitnessPair(alpha, beta)))
    return _drop_faces(pieces)


def hypersurface_fan(F: TropicalPolynomial, lam: Stratum) -> list[ph.RationalCone]:
    return [c for c, _ in hypersurface_pieces(F, lam)]


# certificates and results ------------------------------------------------------------

@dataclass(frozen=True)
class WitnessPair:
    alpha: Exponent
    beta: Exponent

    def to_json(self):
        return {"type": "witness-pair", "alpha": list(self.alpha), "beta": list(self.beta)}


@dataclass(frozen=True)
class GroebnerConeRef:
    cone_id: str

    def to_json(self):
        return {"type": "groebner-cone", "id": self.cone_id}


@dataclass(frozen=True)
class OriginConvention:
    def to_json(self):
        return {"type": "origin-convention"}


Certificate = Union[WitnessPair, GroebnerConeRef, OriginConvention]


@dataclass
class TropicalVarietyResult:
    n: int
    kind: str
    semantics: str
    fan: ph.Fan
    maximal: list[ph.RationalCone]
    certificates: dict = field(default_factory=dict)
    strata_touched: list[Stratum] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)

    @property
    def cones(self) -> list[ph.RationalCone]:
        return self.fan.cones

    def contains(self, w: Sequence) -> bool:
        return any(c.contains(w) for c in self.maximal)

    def interior_rays(self) -> set[tuple[int, ...]]:
        """Primitive directions of the one-dimensional cones inside the open orthant."""
        out = set()
        for c in self.fan.cones:
            if c.dim == 1:
                r = ph.primitive(ph.relative_interior_point(c))
                if all(x > 0 for x in r):
                    out.add(r)
        return out

    def to_json(self) -> dict:
        def extra(c):
            cert = self.certificates.get(c)
            return {"certificate": cert.to_json() if cert is not None else None}

        data = self.fan.to_json(extra)
        data["kind"] = self.kind
        data["strata"] = [s.label for s in self.strata_touched]
        return data


# principal path ---------------------------------------------------------------------

def _stratum_pieces(f: Series, lam: Stratum, semantics: str):
    """Closed cones of the local hypersurface meeting ``U^lam``, with witnesses."""
    n = f.n
    if lam.is_origin:
        if semantics == DEFINITION:
            return [(ph.origin(n), OriginConvention())]
        gens = E0(f)
        if len(gens) >= 2:
            return [(ph.origin(n), WitnessPair(gens[0], gens[1]))]
        return []
    if semantics == DEFINITION:
        return hypersurface_pieces(trop(hat_poly(f, lam)), lam)
    sc = stratum_staircase(f, lam)
    reps = [cls[0] for cls in sc.classes]
    pieces = []
    for i, j in itertools.combinations(range(len(reps)), 2):
        c = _region(n, lam, reps[i], reps, [reps[j]])
        if meets_stratum(c, lam):
            pieces.append((c, WitnessPair(reps[i], reps[j])))
    zero = sorted(lam.zero_set)
    for cls in sc.classes:
        parts = minimal_staircase([tuple(a[k] for k in zero) for a in cls]).generators
        if len(parts) < 2:
            continue
        wit = [a for a in cls if tuple(a[k] for k in zero) in parts[:2]]
        c = _region(n, lam, cls[0], reps)
        if meets_stratum(c, lam):
            pieces.append((c, WitnessPair(wit[0], wit[1])))
    return _drop_faces(pieces)


def member_local(f: Series, w: Sequence, semantics: str = DEFINITION) -> bool:
    """Pointwise membership of ``w`` in the principal local tropical variety."""
    w = as_weight(w)
    lam = stratum_of(w)
    if semantics == DEFINITION:
        if lam.is_origin:
            return True
        return min_twice(trop(hat_poly(f, lam)), w)
    sc = stratum_staircase(f, lam)
    vals = [dot(w, cls[0]) for cls in sc.classes]
    m = min(vals)
    winners = [cls for cls, v in zip(sc.classes, vals) if v == m]
    if len(winners) >= 2:
        return True
    zero = sorted(lam.zero_set)
    parts = minimal_staircase([tuple(a[k] for k in zero) for a in winners[0]]).generators
    return len(parts) >= 2


def member_trop(f: Series, w: Sequence) -> bool:
    return min_twice(trop(f), w)


def member_tilde(f: Series, w: Sequence) -> bool:
    lam = stratum_of(as_weight(w))
    if lam.is_origin:
        return True
    return min_twice(trop(tilde_poly(f, lam)), w)


def member_hat(f: Series, w: Sequence) -> bool:
    lam = stratum_of(as_weight(w))
    if lam.is_origin:
        return True
    return min_twice(trop(hat_poly(f, lam)), w)


def _assemble(n, kind, semantics, pieces, cert_at, caveats):
    pieces = _drop_faces(pieces)
    maximal = [c for c, _ in pieces]
    fan = ph.validate_fan(maximal, n)
    certs = {c: cert for c, cert in pieces}
    for c in fan.cones:
        if c not in certs:
            certs[c] = cert_at(c)
    touched = sorted({ph.cone_stratum(c) for c in fan.cones}, key=Stratum.sort_key)
    return TropicalVarietyResult(n, kind, semantics, fan, maximal, certs, touched, caveats)


def _principal_witness(f: Series, semantics: str):
    def cert_at(c: ph.RationalCone):
        p = ph.interior_sample(c)
        lam = stratum_of(p)
        for cone_, cert in _stratum_pieces(f, lam, semantics):
            if cone_.contains(p):
                return cert
        return None

    return cert_at


def _check_semantics(semantics: str):
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown origin semantics {semantics!r}")


def local_trop_hypersurface(f: Series, semantics: str = DEFINITION) -> TropicalVarietyResult:
    _check_semantics(semantics)
    if f.is_zero():
        raise ZeroSeries("the zero series has no tropical hypersurface")
    caveats = []
    if not f.exact:
        caveats.append(f"truncated input ({TAIL_DOMINATED})")
    if any(not any(e) for e in support(f)):
        caveats.append("unit input: the ideal is the whole ring")
    pieces = []
    for lam in enumerate_strata(f.n):
        pieces.extend(_stratum_pieces(f, lam, semantics))
    return _assemble(f.n, "local-tropical-hypersurface", semantics, pieces,
                     _principal_witness(f, semantics), caveats)


def prevariety(gens: Sequence[Series], semantics: str = DEFINITION) -> TropicalVarietyResult:
    """Intersection of the generators' local hypersurfaces (not the variety)."""
    _check_semantics(semantics)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ZeroSeries("prevariety needs a nonzero generator")
    n = gens[0].n
    caveats = ["prevariety of the given generators; may strictly contain the variety"]
    if any(not g.exact for g in gens):
        caveats.append(f"truncated input ({TAIL_DOMINATED})")
    pieces = []
    for lam in enumerate_strata(n):
        per_gen = [_stratum_pieces(g, lam, semantics) for g in gens]
        if any(not p for p in per_gen):
            continue
        for combo in itertools.product(*per_gen):
            c = combo[0][0]
            for other, _ in combo[1:]:
                c = ph.intersect(c, other)
            if meets_stratum(c, lam):
                pieces.append((c, combo[0][1]))

    def cert_at(c):
        p = ph.interior_sample(c)
        lam = stratum_of(p)
        for cone_, cert in _stratum_pieces(gens[0], lam, semantics):
            if cone_.contains(p):
                return cert
        return None

    return _assemble(n, "prevariety", semantics, pieces, cert_at, caveats)


def member_prevariety(gens: Sequence[Series], w: Sequence, semantics: str = DEFINITION) -> bool:
    return all(member_local(g, w, semantics) for g in gens if not g.is_zero())
