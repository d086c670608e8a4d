"""Exact power series with truncation metadata, weights, strata and initial forms.

A :class:`Series` is a finite list of terms with rational coefficients.  It is
either EXACT (the polynomial itself, an element of Q[x] inside Q[[x]]) or
truncated at total degree ``D`` (only terms of degree <= D are known).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NegativeEntry, ParseError, ZeroSeries

Exponent = tuple[int, ...]
Weight = tuple[Fraction, ...]

DEFAULT_VARS = ("x", "y", "z", "w")

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (optional sign) or an int.  Floats are rejected."""
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise ParseError(f"not a rational literal: {text!r}")
    value = Fraction(text.replace(" ", ""))
    return value


def as_weight(u: Iterable) -> Weight:
    """Coerce a sequence of ints/strings/Fractions to an exact weight tuple."""
    out = []
    for entry in u:
        if isinstance(entry, float):
            raise ParseError(f"floating point weight entry {entry!r}")
        out.append(entry if isinstance(entry, Fraction) else parse_rational(entry))
    return tuple(out)


def dot(u: Sequence, alpha: Sequence[int]) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, alpha)), Fraction(0))


def dominates(a: Exponent, b: Exponent) -> bool:
    """True iff ``a <= b`` componentwise (``b`` lies in ``a + N^n``)."""
    return all(x <= y for x, y in zip(a, b))


class Series:
    """Finite term list in Q[[x_1..x_n]] with optional truncation degree.

    ``truncation=None`` marks an EXACT series (a polynomial).  Instances are
    immutable; arithmetic returns new objects.
    """

    __slots__ = ("n", "_terms", "truncation", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, Fraction] | Iterable = (),
                 truncation: int | None = None):
        if n < 1:
            raise ValueError("need at least one variable")
        if truncation is not None and truncation < 0:
            raise ValueError("truncation degree must be >= 0")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} has wrong length for n={n}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            if truncation is not None and sum(exp) > truncation:
                continue
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(coeff)
        self.n = n
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self.truncation = truncation
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, n: int, truncation: int | None = None) -> "Series":
        return cls(n, {}, truncation)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1, truncation: int | None = None) -> "Series":
        return cls(len(exp), {tuple(exp): Fraction(coeff)}, truncation)

    @classmethod
    def from_string(cls, text: str, variables: Sequence[str] = None,
                    truncation: int | None = None) -> "Series":
        """Parse a polynomial expression such as ``"x*y - x**2 + 1/2*x^2*y"``."""
        import sympy

        variables = tuple(variables or DEFAULT_VARS[:2])
        syms = sympy.symbols(variables)
        try:
            expr = sympy.sympify(text.replace("^", "**"), locals=dict(zip(variables, syms)))
            poly = sympy.Poly(expr, *syms)
        except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
            raise ParseError(f"cannot parse polynomial {text!r}: {exc}") from None
        terms = {}
        for monom, coeff in poly.terms():
            if not coeff.is_Rational:
                raise ParseError(f"non-rational coefficient {coeff} in {text!r}")
            terms[monom] = Fraction(int(coeff.p), int(coeff.q))
        return cls(len(variables), terms, truncation)

    # basic protocol -------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.truncation is None

    @property
    def terms(self) -> tuple[tuple[Exponent, Fraction], ...]:
        return self._terms

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def coeff(self, exp: Exponent) -> Fraction:
        return dict(self._terms).get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.n, self._terms, self.truncation) == (other.n, other._terms, other.truncation)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self._terms, self.truncation))
        return self._hash

    def same_terms(self, other: "Series") -> bool:
        """Equality of term lists ignoring truncation metadata."""
        return self.n == other.n and self._terms == other._terms

    def with_truncation(self, truncation: int | None) -> "Series":
        return Series(self.n, self._terms, truncation)

    def restrict(self, exps: Iterable[Exponent]) -> "Series":
        """Keep only the terms with exponents in ``exps``."""
        keep = set(exps)
        return Series(self.n, [(e, c) for e, c in self._terms if e in keep], self.truncation)

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (``-1`` for zero)."""
        return min((sum(e) for e, _ in self._terms), default=-1)

    # arithmetic ------------------------------------------------------------

    def _combine_trunc(self, other: "Series") -> int | None:
        if self.truncation is None:
            return other.truncation
        if other.truncation is None:
            return self.truncation
        return min(self.truncation, other.truncation)

    def __add__(self, other: "Series") -> "Series":
        acc = self.as_dict()
        for e, c in other._terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return Series(self.n, acc, self._combine_trunc(other))

    def __neg__(self) -> "Series":
        return Series(self.n, [(e, -c) for e, c in self._terms], self.truncation)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, c) -> "Series":
        return Series(self.n, [(e, Fraction(c) * v) for e, v in self._terms], self.truncation)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        # a series known to degree D1 with order o1 times one known to D2 with
        # order o2 is known to degree min(D1 + o2, D2 + o1)
        bounds = []
        if self.truncation is not None:
            bounds.append(self.truncation + max(other.order(), 0))
        if other.truncation is not None:
            bounds.append(other.truncation + max(self.order(), 0))
        trunc = min(bounds) if bounds else None
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Series(self.n, acc, trunc)

    __rmul__ = scale

    # display ---------------------------------------------------------------

    def to_string(self, variables: Sequence[str] = None) -> str:
        variables = variables or _default_names(self.n)
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self._terms:
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(variables, exp) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        if self.truncation is not None:
            out += f" + O(deg {self.truncation + 1})"
        return out

    def __repr__(self):
        return f"Series({self.to_string()!r})"

    def term_list(self) -> list[dict]:
        """Canonical JSON term list ``[{"c": "p/q", "e": [...]}, ...]``."""
        return [{"c": str(c), "e": list(e)} for e, c in self._terms]


def _default_names(n: int) -> tuple[str, ...]:
    if n <= len(DEFAULT_VARS):
        return DEFAULT_VARS[:n]
    return tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class Stratum:
    """Coordinates forced to zero, stored 0-based.

    The open stratum is ``{u : u_i = 0 for i in zero_set, u_i > 0 otherwise}``.
    Labels are printed 1-based as in ``"0"`` (maximal), ``"1"``, ``"12"``.
    """

    n: int
    zero_set: frozenset

    def __post_init__(self):
        object.__setattr__(self, "zero_set", frozenset(self.zero_set))
        if any(i < 0 or i >= self.n for i in self.zero_set):
            raise ValueError(f"stratum index out of range for n={self.n}")

    @classmethod
    def from_label(cls, n: int, indices: Iterable[int]) -> "Stratum":
        """Build from 1-based coordinate indices."""
        return cls(n, frozenset(i - 1 for i in indices))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if i not in self.zero_set)

    @property
    def is_origin(self) -> bool:
        return len(self.zero_set) == self.n

    @property
    def is_maximal(self) -> bool:
        return not self.zero_set

    @property
    def label(self) -> str:
        if not self.zero_set:
            return "0"
        sep = "," if self.n > 9 else ""
        return sep.join(str(i + 1) for i in sorted(self.zero_set))

    def contains(self, u: Sequence) -> bool:
        return all((u[i] == 0) == (i in self.zero_set) for i in range(self.n)) and all(
            x >= 0 for x in u
        )

    def sort_key(self):
        return (len(self.zero_set), tuple(sorted(self.zero_set)))

    def __str__(self):
        return f"U^{self.label}"


@dataclass(frozen=True)
class InitialForm:
    body: Series
    weight: Weight
    value: Fraction
    ring_tag: Stratum
    unsound: bool = False

    def is_monomial(self) -> bool:
        return len(self.body) == 1


def support(f: Series) -> set[Exponent]:
    return {e for e, _ in f.terms}


def weight_of(f: Series, u: Sequence) -> Fraction:
    if f.is_zero():
        raise ZeroSeries("weight of the zero series is undefined")
    return min(dot(u, e) for e, _ in f.terms)


def stratum_of(u: Sequence) -> Stratum:
    if any(x < 0 for x in u):
        raise NegativeEntry(f"weight {tuple(str(x) for x in u)} is not local")
    return Stratum(len(u), frozenset(i for i, x in enumerate(u) if x == 0))


def initial_form(f: Series, u: Sequence) -> InitialForm:
    u = as_weight(u)
    value = weight_of(f, u)
    body = Series(f.n, [(e, c) for e, c in f.terms if dot(u, e) == value], f.truncation)
    # a truncated series can hide minimal-weight terms only in zero-weight directions
    unsound = f.truncation is not None and any(x == 0 for x in u)
    return InitialForm(body, u, value, stratum_of(u), unsound)


def enumerate_strata(n: int) -> list[Stratum]:
    out = []
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            out.append(Stratum(n, frozenset(combo)))
    return out
