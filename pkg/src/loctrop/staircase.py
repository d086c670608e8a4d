"""Minimal staircases of supports and the per-stratum auxiliary polynomials.

For a stratum ``lam`` (coordinates set to zero) the support is projected onto
the remaining coordinates, the projected minimal staircase is taken, and its
fibres give the classes.  ``tilde_poly`` keeps every term in a class,
``hat_poly`` keeps at most two per class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Exponent, Series, Stratum, dominates, support
from .errors import ZeroSeries

COMPLETE = "COMPLETE"
TAIL_DOMINATED = "COMPLETE-IF-TAIL-DOMINATED"


@dataclass(frozen=True)
class Staircase:
    generators: tuple[Exponent, ...]
    ambient: tuple[int, ...]

    def covers(self, alpha: Exponent) -> bool:
        return any(dominates(g, alpha) for g in self.generators)


@dataclass(frozen=True)
class StratumClasses:
    stratum: Stratum
    projected: Staircase
    classes: tuple[tuple[Exponent, ...], ...]
    soundness: str = COMPLETE

    @property
    def exponents(self) -> set[Exponent]:
        return {a for cls in self.classes for a in cls}


def minimal_staircase(points: Iterable[Exponent], ambient: tuple[int, ...] | None = None) -> Staircase:
    """Componentwise-minimal elements of a finite set of exponents."""
    pts = sorted(set(map(tuple, points)), key=lambda a: (sum(a), a))
    kept: list[Exponent] = []
    for a in pts:
        # anything dominating ``a`` has total degree >= deg(a), so it comes later
        if not any(dominates(g, a) for g in kept):
            kept.append(a)
    if ambient is None:
        ambient = tuple(range(len(pts[0]))) if pts else ()
    return Staircase(tuple(sorted(kept)), ambient)


def _project(alpha: Exponent, keep: tuple[int, ...]) -> Exponent:
    return tuple(alpha[i] for i in keep)


def stratum_staircase(f: Series, lam: Stratum) -> StratumClasses:
    if f.is_zero():
        raise ZeroSeries("staircase of the zero series")
    keep = lam.support
    supp = sorted(support(f))
    proj = minimal_staircase((_project(a, keep) for a in supp), keep)
    classes = []
    for beta in proj.generators:
        fibre = tuple(a for a in supp if _project(a, keep) == beta)
        classes.append(fibre)
    soundness = COMPLETE if f.exact else TAIL_DOMINATED
    return StratumClasses(lam, proj, tuple(classes), soundness)


def E0(f: Series) -> tuple[Exponent, ...]:
    """The minimal staircase of ``Supp(f)``."""
    return minimal_staircase(support(f)).generators


def tilde_poly(f: Series, lam: Stratum) -> Series:
    if lam.is_origin or f.is_zero():
        return Series.zero(f.n)
    sc = stratum_staircase(f, lam)
    return f.restrict(sc.exponents).with_truncation(None)


def hat_selection(sc: StratumClasses) -> tuple[tuple[Exponent, ...], ...]:
    """Two lexicographically smallest exponents of each class (or the singleton)."""
    return tuple(tuple(sorted(cls)[:2]) for cls in sc.classes)


def hat_poly(f: Series, lam: Stratum) -> Series:
    if lam.is_origin or f.is_zero():
        return Series.zero(f.n)
    sc = stratum_staircase(f, lam)
    chosen = {a for pair in hat_selection(sc) for a in pair}
    return f.restrict(chosen).with_truncation(None)


@dataclass
class StaircaseReport:
    """Everything the ``staircase`` command prints for one stratum."""

    stratum: Stratum
    classes: StratumClasses
    tilde: Series
    hat: Series
    notes: list[str] = field(default_factory=list)


def staircase_report(f: Series, lam: Stratum) -> StaircaseReport:
    notes = []
    if lam.is_origin:
        notes.append("origin stratum: tilde and hat are 0 by convention")
    classes = stratum_staircase(f, lam)
    if classes.soundness != COMPLETE:
        notes.append(
            "input is truncated: result is correct provided every omitted term "
            "lies in the staircase of the shown terms"
        )
    return StaircaseReport(lam, classes, tilde_poly(f, lam), hat_poly(f, lam), notes)
