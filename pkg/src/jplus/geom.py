"""Exact rational predicates for polylines in the plane.

Every coordinate is a :class:`fractions.Fraction`; no predicate in this
module ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Number = Union[int, Fraction, str]


def scalar(value: Number) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: Number, y: Number) -> "Point":
        return cls(scalar(x), scalar(y))

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


class Segment(NamedTuple):
    a: Point
    b: Point


def cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def sign(v) -> int:
    return (v > 0) - (v < 0)


def orient(p, q, r) -> int:
    """Sign of (q - p) x (r - p): +1 counterclockwise, 0 collinear."""
    return sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def midpoint(p, q) -> Point:
    return Point((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def lerp(p, q, t) -> Point:
    return Point(p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def on_segment(p, a, b) -> bool:
    """True when ``p`` lies on the closed segment ``ab``."""
    if not (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])):
        return False
    return orient(a, b, p) == 0


def segment_parameter(p, a, b) -> Fraction:
    """Parameter t with p = a + t (b - a); p is assumed to lie on the line."""
    d = (b[0] - a[0], b[1] - a[1])
    if d[0] != 0:
        return (p[0] - a[0]) / d[0]
    return (p[1] - a[1]) / d[1]


# Intersection classification tags.
DISJOINT = "disjoint"
TRANSVERSAL = "transversal-interior"
DEGENERATE = "degenerate"

ENDPOINT_CONTACT = "endpoint-contact"
ENDPOINT_ON_INTERIOR = "endpoint-on-interior"
COLLINEAR_OVERLAP = "collinear-overlap"


class Intersection(NamedTuple):
    kind: str
    point: Point | None = None
    detail: str | None = None


_DISJOINT = Intersection(DISJOINT)


def boxes_overlap(a, b, c, d) -> bool:
    return not (max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0])
                or max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1]))


def segment_intersection(s1: Sequence, s2: Sequence) -> Intersection:
    """Classify how two nondegenerate closed segments meet.

    ``transversal-interior`` is reported only when the unique common point
    is interior to both segments; every other contact is ``degenerate``
    with a kind tag in ``detail``.
    """
    a, b = s1
    c, d = s2
    if a == b or c == d:
        raise ValueError("degenerate segment")
    if not boxes_overlap(a, b, c, d):
        return _DISJOINT
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        r = (b[0] - a[0], b[1] - a[1])
        s = (d[0] - c[0], d[1] - c[1])
        t = Fraction(cross((c[0] - a[0], c[1] - a[1]), s), cross(r, s))
        return Intersection(TRANSVERSAL, lerp(a, b, t))
    if o1 == o2 == o3 == o4 == 0:
        shared = [p for p in (c, d) if on_segment(p, a, b)]
        shared += [p for p in (a, b) if on_segment(p, c, d) and p not in shared]
        if not shared:
            return _DISJOINT
        if len(shared) == 1:
            return Intersection(DEGENERATE, shared[0], ENDPOINT_CONTACT)
        return Intersection(DEGENERATE, min(shared), COLLINEAR_OVERLAP)
    for p, q, o in ((c, (a, b), o1), (d, (a, b), o2), (a, (c, d), o3), (b, (c, d), o4)):
        if o == 0 and on_segment(p, *q):
            if p in q:
                return Intersection(DEGENERATE, p, ENDPOINT_CONTACT)
            return Intersection(DEGENERATE, p, ENDPOINT_ON_INTERIOR)
    return _DISJOINT


def integer_frame(points: Iterable) -> int:
    """Common denominator turning all coordinates into integers."""
    from math import lcm
    den = 1
    for p in points:
        den = lcm(den, p[0].denominator, p[1].denominator)
    return den


def as_integers(p, den: int) -> tuple[int, int]:
    x, y = p[0], p[1]
    return x.numerator * (den // x.denominator), y.numerator * (den // y.denominator)


class NonGenericRay(Exception):
    """The chosen ray hits a segment endpoint or runs along a segment."""


class OnCurveError(ValueError):
    """A point that must avoid the curve lies on it."""


def ray_winding_contribution(origin, direction, seg: Sequence) -> int:
    """Signed crossing of the ray ``origin + t*direction`` (t > 0) by ``seg``.

    +1 when the directed segment crosses from the ray's right to its left,
    -1 for the reverse, 0 when it misses the ray.
    """
    a, b = seg
    tip = (origin[0] + direction[0], origin[1] + direction[1])
    oa = orient(origin, tip, a)
    ob = orient(origin, tip, b)

    def ahead(p):
        return dot((p[0] - origin[0], p[1] - origin[1]), direction) > 0

    if oa == 0 and ob == 0:
        if on_segment(origin, a, b):
            raise OnCurveError(f"{tuple(origin)} lies on the segment")
        if ahead(a) or ahead(b):
            raise NonGenericRay("ray runs along a segment")
        return 0
    if oa == 0 and ahead(a) or ob == 0 and ahead(b):
        if oa == 0 and a == origin or ob == 0 and b == origin:
            raise OnCurveError(f"{tuple(origin)} is a segment endpoint")
        raise NonGenericRay("ray passes through a segment endpoint")
    if oa == 0 or ob == 0 or oa == ob:
        if on_segment(origin, a, b):
            raise OnCurveError(f"{tuple(origin)} lies on the segment")
        return 0
    side = orient(a, b, origin)
    if side == 0:
        raise OnCurveError(f"{tuple(origin)} lies on the segment")
    if oa < 0 < ob:
        return 1 if side > 0 else 0
    return -1 if side < 0 else 0


def _ray_directions():
    yield (1, 0)
    k = 1
    while True:
        yield (k, 1)
        yield (-1, k)
        yield (-k, -1)
        yield (1, -k)
        yield (2 * k + 1, 2)
        k += 1


def winding_number(p, segments: Iterable[Sequence]) -> int:
    """Winding number of closed polylines around ``p`` by exact ray casting.

    The ray direction is reselected until it avoids all segment endpoints.
    Raises :class:`OnCurveError` if ``p`` lies on a segment.
    """
    segments = list(segments)
    if not all(type(v) is int for s in segments for q in s for v in q):
        # integer coordinates keep the many orientation tests cheap
        den = integer_frame([p] + [q for s in segments for q in s])
        p = as_integers(p, den)
        segments = [(as_integers(a, den), as_integers(b, den)) for a, b in segments]
    for direction in _ray_directions():
        try:
            return sum(ray_winding_contribution(p, direction, s) for s in segments)
        except NonGenericRay:
            continue
    raise AssertionError("unreachable")


def signed_area2(points: Sequence) -> Fraction:
    """Twice the signed shoelace area of a closed polygon."""
    total = 0
    n = len(points)
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        total += p[0] * q[1] - q[0] * p[1]
    return Fraction(total)


def direction_half(d) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def angle_key(d):
    """Sort key placing directions in counterclockwise order from +x.

    Exact: directions are compared by half-plane and then by the slope
    expressed as a Fraction-free comparison through cross products.
    """
    return _AngleKey(d)


class _AngleKey:
    __slots__ = ("d", "h")

    def __init__(self, d):
        self.d = d
        self.h = direction_half(d)

    def __lt__(self, other):
        if self.h != other.h:
            return self.h < other.h
        return cross(self.d, other.d) > 0

    def __eq__(self, other):
        return self.h == other.h and cross(self.d, other.d) == 0


class SegmentIndex:
    """Uniform grid over segment bounding boxes for candidate filtering.

    Bucketing uses padded float boxes and is only ever a superset filter;
    all decisions are left to the exact predicates above.
    """

    def __init__(self, segments: Sequence[Sequence]):
        self.segments = list(segments)
        # scale down by a power of two when coordinates would overflow floats
        big = max((abs(v) for s in self.segments for q in s for v in q), default=0)
        self._scale = 1 << max(0, int(big).bit_length() - 900)
        boxes = [self._box(a, b) for a, b in self.segments]
        self._boxes = boxes
        if not boxes:
            self._cells = {}
            return
        x0 = min(b[0] for b in boxes)
        y0 = min(b[1] for b in boxes)
        x1 = max(b[2] for b in boxes)
        y1 = max(b[3] for b in boxes)
        wx, wy = max(x1 - x0, 1e-12), max(y1 - y0, 1e-12)
        n = len(boxes)
        nx = max(1, min(n, round((n * wx / wy) ** 0.5)))
        ny = max(1, min(n, round(n / nx)))
        self._origin = (x0, y0)
        self._cw = wx / nx * (1 + 1e-9)
        self._ch = wy / ny * (1 + 1e-9)
        self._pad = max(wx, wy) * 1e-9
        cells: dict = {}
        for i, box in enumerate(boxes):
            for key in self._keys(box):
                cells.setdefault(key, []).append(i)
        self._cells = cells

    def _box(self, a, b):
        k = self._scale
        if k == 1:
            return (float(min(a[0], b[0])), float(min(a[1], b[1])),
                    float(max(a[0], b[0])), float(max(a[1], b[1])))
        return (float(Fraction(min(a[0], b[0])) / k), float(Fraction(min(a[1], b[1])) / k),
                float(Fraction(max(a[0], b[0])) / k), float(Fraction(max(a[1], b[1])) / k))

    def _keys(self, box):
        pad, cw, ch = self._pad, self._cw, self._ch
        x0, y0 = self._origin
        i0 = int((box[0] - pad - x0) // cw)
        i1 = int((box[2] + pad - x0) // cw)
        j0 = int((box[1] - pad - y0) // ch)
        j1 = int((box[3] + pad - y0) // ch)
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                yield (i, j)

    def candidate_pairs(self) -> set[tuple[int, int]]:
        pairs = set()
        boxes = self._boxes
        for ids in self._cells.values():
            for k, i in enumerate(ids):
                bi = boxes[i]
                for j in ids[k + 1:]:
                    bj = boxes[j]
                    if (bi[2] < bj[0] - self._pad or bj[2] < bi[0] - self._pad
                            or bi[3] < bj[1] - self._pad or bj[3] < bi[1] - self._pad):
                        continue
                    pairs.add((i, j) if i < j else (j, i))
        return pairs

    def query(self, a, b) -> set[int]:
        """Indices of segments whose boxes may meet the box of ``ab``."""
        if not self._boxes:
            return set()
        box = self._box(a, b)
        found = set()
        for key in self._keys(box):
            found.update(self._cells.get(key, ()))
        return found
