"""Deterministic SVG drawings of analysed curve systems."""
from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .arrangement import Arrangement, build_arrangement
from .curves import CurveSystem
from .invariants import InvariantReport, analyze

COLORS = ("#1f5fa8", "#c0392b")
SIZE = 640
MARGIN = 48


class _Frame:
    """Maps exact plane coordinates to SVG pixels (y pointing down)."""

    def __init__(self, system: CurveSystem):
        x0, y0, x1, y1 = system.bbox()
        span = max(x1 - x0, y1 - y0) or Fraction(1)
        self.k = Fraction(SIZE - 2 * MARGIN) / span
        self.x0, self.y1 = x0, y1
        self.width = float((x1 - x0) * self.k) + 2 * MARGIN
        self.height = float((y1 - y0) * self.k) + 2 * MARGIN

    def __call__(self, p) -> tuple[float, float]:
        return (float((p[0] - self.x0) * self.k) + MARGIN,
                float((self.y1 - p[1]) * self.k) + MARGIN)


def _num(v: float) -> str:
    text = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def _arrow(a, b, color: str) -> str:
    """Small arrowhead at the midpoint of the pixel segment a -> b."""
    mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
    dx, dy = b[0] - a[0], b[1] - a[1]
    length = (dx * dx + dy * dy) ** 0.5 or 1.0
    ux, uy = dx / length * 7, dy / length * 7
    pts = [(mx + ux, my + uy), (mx - ux - uy * 0.6, my - uy + ux * 0.6),
           (mx - ux + uy * 0.6, my - uy - ux * 0.6)]
    coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
    return f'<polygon points="{coords}" fill="{color}"/>'


def render_svg(system: CurveSystem, arr: Arrangement | None = None,
               result: InvariantReport | None = None) -> str:
    """Curves coloured per component with orientation arrows, faces labelled
    by winding number, crossings by index, and u for a disjoint pair."""
    arr = arr or build_arrangement(system)
    result = result or analyze(system, arr)
    frame = _Frame(system)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(frame.width)}" '
           f'height="{_num(frame.height + 24)}" font-family="sans-serif" font-size="13">',
           '<rect width="100%" height="100%" fill="white"/>']
    for c, curve in enumerate(system):
        color = COLORS[c % len(COLORS)]
        pts = [frame(p) for p in curve.vertices]
        coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
        out.append(f'<polygon class="curve" data-id="{escape(curve.id)}" points="{coords}" '
                   f'fill="none" stroke="{color}" stroke-width="2"/>')
        for a, b in zip(pts, pts[1:] + pts[:1]):
            out.append(_arrow(a, b, color))
    for f in range(len(arr.faces)):
        if f == arr.outer_face:
            x, y = MARGIN / 2, MARGIN / 2
        else:
            x, y = frame(arr.sample_point(f))
        out.append(f'<text class="winding" x="{_num(x)}" y="{_num(y + 4)}" '
                   f'text-anchor="middle" fill="#333">{result.windings[f]}</text>')
    for cr in arr.crossings:
        x, y = frame(cr.position)
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="3" fill="black"/>')
        out.append(f'<text class="index" x="{_num(x + 5)}" y="{_num(y - 5)}" '
                   f'font-size="11" fill="#7a4">{result.indices[cr.id]}</text>')
    if result.j2_plus is None:
        caption = f"J+ = {result.j_plus}"
    else:
        caption = f"J2+ = {result.j2_plus}   u = {result.u}"
    out.append(f'<text class="caption" x="{MARGIN}" y="{_num(frame.height + 12)}">'
               f'{escape(caption)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
