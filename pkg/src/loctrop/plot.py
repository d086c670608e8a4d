"""Hand-written SVG for two-variable fans in the closed first quadrant.

The viewport is ``[0, M]^2`` where ``M`` is the largest coordinate among the
primitive ray generators (at least 1).  Rays run from the origin to the edge
of the viewport, two-dimensional cones are shaded, the origin is marked and
every ray is labelled by its primitive direction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import polyhedra as ph
from .errors import DomainError

SIZE = 400
MARGIN = 40


def _num(x: Fraction) -> str:
    return f"{float(x):.3f}"


def _clip(r: Sequence[int], M: int) -> tuple[Fraction, Fraction]:
    """Point where the ray through ``r`` leaves the box ``[0, M]^2``."""
    s = Fraction(M, max(r))
    return r[0] * s, r[1] * s


def render_fan(fan: ph.Fan, variables: Sequence[str] = ("u1", "u2"), title: str = "") -> str:
    if fan.ambient_dim != 2:
        raise DomainError("SVG output is only available for two variables")
    gens = sorted({r for c in fan.cones for r in ph.rays(c)})
    M = max([1] + [max(r) for r in gens])
    scale = Fraction(SIZE, M)

    def px(p) -> tuple[str, str]:
        return _num(MARGIN + p[0] * scale), _num(MARGIN + SIZE - p[1] * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE + 2 * MARGIN}" '
        f'height="{SIZE + 2 * MARGIN}" viewBox="0 0 {SIZE + 2 * MARGIN} {SIZE + 2 * MARGIN}">',
        f"<title>{title}</title>" if title else "",
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="#999"/>',
    ]
    ox, oy = px((0, 0))
    ex, _ = px((M, 0))
    _, ey = px((0, M))
    out.append(f'<line x1="{ox}" y1="{oy}" x2="{ex}" y2="{oy}" stroke="#000"/>')
    out.append(f'<line x1="{ox}" y1="{oy}" x2="{ox}" y2="{ey}" stroke="#000"/>')
    out.append(f'<text x="{ex}" y="{_num(MARGIN + SIZE + 25)}" text-anchor="end">{variables[0]}</text>')
    out.append(f'<text x="{_num(MARGIN - 25)}" y="{ey}" text-anchor="start">{variables[1]}</text>')

    for c in fan.cones:
        if c.dim != 2:
            continue
        a, b = ph.rays(c)
        pa, pb = _clip(a, M), _clip(b, M)
        pts = [(0, 0), pa]
        # go round the box corner when the two clip points sit on different edges
        if pa[0] == M and pb[1] == M or pa[1] == M and pb[0] == M:
            pts.append((M, M))
        pts.append(pb)
        poly = " ".join(",".join(px(p)) for p in pts)
        out.append(f'<polygon points="{poly}" fill="#4a7ab5" fill-opacity="0.25" stroke="none"/>')
    for r in gens:
        end = _clip(r, M)
        x2, y2 = px(end)
        out.append(f'<line x1="{ox}" y1="{oy}" x2="{x2}" y2="{y2}" stroke="#c0392b" stroke-width="3"/>')
        out.append(f'<text x="{x2}" y="{_num(MARGIN + SIZE - end[1] * scale - 8)}" text-anchor="end" '
                   f'font-size="14">({r[0]},{r[1]})</text>')
    if any(c.is_origin() for c in fan.cones):
        out.append(f'<circle cx="{ox}" cy="{oy}" r="5" fill="#c0392b"/>')
    else:
        out.append(f'<circle cx="{ox}" cy="{oy}" r="5" fill="none" stroke="#c0392b"/>')
    out.append("</svg>")
    return "\n".join(line for line in out if line) + "\n"
