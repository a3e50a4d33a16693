"""Closed polylines standing in for generic immersions of circles."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .geom import Point, SegmentIndex, as_integers, integer_frame, cross, dot, on_segment, signed_area2, scalar


class CurveError(ValueError):
    """A polyline violates the immersion rules (too short, folded, self-touching)."""


@dataclass(frozen=True)
class Immersion:
    """Oriented closed polyline; the last vertex connects back to the first."""

    id: str
    vertices: tuple[Point, ...]
    _problems: tuple | None = field(default=None, compare=False, repr=False)

    def __init__(self, id: str, vertices: Iterable, *, check: bool = True):
        pts = tuple(v if isinstance(v, Point) else Point(scalar(v[0]), scalar(v[1]))
                    for v in vertices)
        object.__setattr__(self, "id", str(id))
        object.__setattr__(self, "vertices", pts)
        object.__setattr__(self, "_problems", None)
        if check:
            problems = immersion_problems(self)
            if problems:
                raise CurveError(f"curve {self.id!r}: " + "; ".join(problems))

    def __len__(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point, Point]:
        v = self.vertices
        return v[i], v[(i + 1) % len(v)]

    def edges(self) -> Iterator[tuple[Point, Point]]:
        for i in range(len(self.vertices)):
            yield self.edge(i)

    def reversed(self) -> "Immersion":
        v = self.vertices
        return Immersion(self.id, (v[0],) + v[:0:-1], check=False)

    def translated(self, dx, dy) -> "Immersion":
        dx, dy = scalar(dx), scalar(dy)
        return Immersion(self.id, (Point(p.x + dx, p.y + dy) for p in self.vertices),
                         check=False)

    def transformed(self, scale, dx=0, dy=0) -> "Immersion":
        """Apply p -> scale * p + (dx, dy) with a positive rational scale."""
        k = scalar(scale)
        if k <= 0:
            raise ValueError("scale must be positive")
        dx, dy = scalar(dx), scalar(dy)
        return Immersion(self.id, (Point(p.x * k + dx, p.y * k + dy) for p in self.vertices),
                         check=False)

    def relabeled(self, id: str) -> "Immersion":
        return Immersion(id, self.vertices, check=False)

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def signed_area2(self) -> Fraction:
        return signed_area2(self.vertices)


def immersion_problems(curve: Immersion) -> list[str]:
    """List violations of the polyline immersion rules (empty when fine)."""
    if curve._problems is None:
        object.__setattr__(curve, "_problems", tuple(_problems(curve)))
    return list(curve._problems)


def _problems(curve: Immersion) -> list[str]:
    den = integer_frame(curve.vertices)
    v = [as_integers(p, den) for p in curve.vertices]
    n = len(v)
    if n < 3:
        return [f"needs at least 3 vertices, got {n}"]
    out = []
    for i in range(n):
        if v[i] == v[(i + 1) % n]:
            out.append(f"repeated vertex {i}")
    if out:
        return out
    for i in range(n):
        prev, here, nxt = v[i - 1], v[i], v[(i + 1) % n]
        din = (here[0] - prev[0], here[1] - prev[1])
        dout = (nxt[0] - here[0], nxt[1] - here[1])
        if cross(din, dout) == 0 and dot(din, dout) < 0:
            out.append(f"fold back at vertex {i}")
    index = SegmentIndex([(v[i], v[(i + 1) % n]) for i in range(n)])
    for i in range(n):
        p = v[i]
        for j in sorted(index.query(p, p)):
            if j == i or (j + 1) % n == i:
                continue
            a, b = v[j], v[(j + 1) % n]
            if on_segment(p, a, b):
                out.append(f"vertex {i} touches edge {j}")
    return out


@dataclass(frozen=True)
class CurveSystem:
    """One immersion, or the ordered pair of immersions of a two-curve system."""

    components: tuple[Immersion, ...]

    def __init__(self, components: Sequence[Immersion] | Immersion):
        if isinstance(components, Immersion):
            components = (components,)
        comps = tuple(components)
        if not 1 <= len(comps) <= 2:
            raise CurveError(f"a system has 1 or 2 curves, got {len(comps)}")
        ids = [c.id for c in comps]
        if len(set(ids)) != len(ids):
            raise CurveError(f"duplicate curve ids {ids}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def pair(cls, first: Immersion, second: Immersion) -> "CurveSystem":
        return cls((first.relabeled("S1"), second.relabeled("S2")))

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i) -> Immersion:
        return self.components[i]

    def index_of(self, curve_id: str) -> int:
        for i, c in enumerate(self.components):
            if c.id == curve_id:
                return i
        raise KeyError(curve_id)

    def replace(self, index: int, curve: Immersion) -> "CurveSystem":
        comps = list(self.components)
        comps[index] = curve
        return CurveSystem(comps)

    def reversed(self, which: Iterable[int] | None = None) -> "CurveSystem":
        which = set(range(len(self))) if which is None else set(which)
        return CurveSystem([c.reversed() if i in which else c
                            for i, c in enumerate(self.components)])

    def transformed(self, scale, dx=0, dy=0) -> "CurveSystem":
        return CurveSystem([c.transformed(scale, dx, dy) for c in self.components])

    def bbox(self):
        boxes = [c.bbox() for c in self.components]
        return (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes))

    def segments(self, which: Iterable[int] | None = None):
        which = range(len(self)) if which is None else which
        for i in which:
            yield from self.components[i].edges()
