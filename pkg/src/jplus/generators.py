"""Exact polyline templates for the standard curve families and constructions.

Templates use small integer coordinates.  Every family member is
positively (counterclockwise) oriented on its outer boundary, with a
vertical left edge running down and a vertical right edge running up so
that members can be chained by connected sums.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import build_arrangement, face_of_point, validate_generic
from .curves import CurveSystem, Immersion
from .geom import Point, segment_intersection, orient
from .invariants import analyze, j_plus

F = Fraction

# Three crossings on a horizontal axis, lobes alternate.
EXAMPLE1 = [(0, 0), (1, 1), (3, -1), (5, 1), (7, -1), (8, 0),
            (7, 1), (5, -1), (3, 1), (1, -1)]

# Four crossings of index 1: a curl, a reversed curl on the curl's top
# strand, and a finger of that strand pushed through the top of the outer loop.
EXAMPLE2 = [(0, 0), (24, 15), (21, 15), (18, 18), (20, 18), (17, 15), (15, 15),
            (15, 27), (9, 27), (9, 15), (6, 15), (21, 0), (36, 0), (36, 24), (0, 24)]

FIGURE_EIGHT = [(-2, -1), (2, 1), (2, -1), (-2, 1)]

_P_WIDTH, _P_HEIGHT, _P_GAP = 36, 24, 12
_K_HEIGHT = 6
_P_RIGHT_EDGE = EXAMPLE2.index((36, 0))
_P_LEFT_EDGE = EXAMPLE2.index((0, 24))


class ConstructionError(AssertionError):
    """A constructed curve failed its own invariant check."""


def example1(id: str = "S") -> Immersion:
    return Immersion(id, EXAMPLE1)


def example2(id: str = "S") -> Immersion:
    return Immersion(id, EXAMPLE2)


def _curls(count: int, start_x: int = 0) -> list[tuple[int, int]]:
    pts = []
    for k in range(count):
        a = start_x + 4 * k
        pts += [(a, 0), (a + 3, 3), (a + 1, 3)]
    return pts


def std_k(i: int, id: str = "S") -> Immersion:
    """Standard curve K_i: figure eight for i = 0, else a loop with i - 1 inner curls."""
    if i < 0:
        raise ValueError("K_i needs i >= 0")
    if i == 0:
        return Immersion(id, FIGURE_EIGHT)
    width = 4 * max(i - 1, 1)
    pts = _curls(i - 1) or [(0, 0)]
    pts += [(width, 0), (width, _K_HEIGHT), (0, _K_HEIGHT)]
    return Immersion(id, pts)


def splice(a: Immersion, ia: int, b: Immersion, ib: int, id: str | None = None) -> Immersion:
    """Drop edge ``ia`` of ``a`` and ``ib`` of ``b`` and bridge the loose ends.

    With a's edge p->q and b's edge r->s the bridges are p->s and r->q.
    """
    va, vb = a.vertices, b.vertices
    verts = va[ia + 1:] + va[:ia + 1] + vb[ib + 1:] + vb[:ib + 1]
    return Immersion(a.id if id is None else id, verts, check=False)


def _edge_index(curve: Immersion, p, q) -> int:
    p, q = Point(F(p[0]), F(p[1])), Point(F(q[0]), F(q[1]))
    for j, (a, b) in enumerate(curve.edges()):
        if a == p and b == q:
            return j
    raise KeyError(f"no edge {p} -> {q}")


def _side_edge(curve: Immersion, side: str) -> int:
    """Index of the vertical edge on the far left (running down) or right (running up)."""
    xs = [p.x for p in curve.vertices]
    edge_x = min(xs) if side == "left" else max(xs)
    for j, (a, b) in enumerate(curve.edges()):
        if a.x == b.x == edge_x and (a.y > b.y) == (side == "left"):
            return j
    raise KeyError(f"no vertical {side} edge")


def std_p(k: int, id: str = "S") -> Immersion:
    """P_k: k copies of the four-crossing J+ = 2 curve chained by connected sums along the x-axis."""
    if k < 1:
        raise ValueError("P_k needs k >= 1")
    curve = Immersion(id, EXAMPLE2, check=False)
    step = _P_WIDTH + _P_GAP
    right = _P_RIGHT_EDGE
    for c in range(1, k):
        nxt = Immersion(id, EXAMPLE2, check=False).translated(c * step, 0)
        size = len(curve)
        curve = splice(curve, right, nxt, _P_LEFT_EDGE)
        right = size + (_P_RIGHT_EDGE - _P_LEFT_EDGE - 1) % len(EXAMPLE2)
    return Immersion(id, curve.vertices)


def _l_size(i: int) -> int:
    return 2 * i + 6


def std_l(i: int, id: str = "S") -> Immersion:
    """L_i: a counterclockwise square spiral of i + 1 turns closed by a radial return.

    Faces carry windings 0..i+1 and the i crossings have indices 1..i.
    """
    if i < 0:
        raise ValueError("L_i needs i >= 0")
    w = h = _l_size(i)
    pts = [(i + 1, 0)]
    for j in range(i + 1):
        pts += [(w - j, j), (w - j, h - j), (j, h - j), (j, j + 1)]
    pts.append((i + 1, i + 1))
    return Immersion(id, pts)


def family(name: str, param: int, id: str = "S") -> Immersion:
    name = name.lower()
    if name == "k":
        return std_k(param, id)
    if name == "p":
        return std_p(param, id)
    if name == "l":
        return std_l(param, id)
    raise ValueError(f"unknown family {name!r}; expected k, p or l")


def family_j_plus(name: str, param: int) -> int:
    """Closed-form J+ of a family member."""
    name = name.lower()
    if name == "k":
        return 0 if param == 0 else 2 - 2 * param
    if name == "p":
        return 2 * param
    if name == "l":
        return -param * (1 + param)
    raise ValueError(f"unknown family {name!r}")


def curve_with_j_plus(n: int, id: str = "S") -> Immersion:
    """A family member with J+ = n: K_{1-n/2} for n <= 0, P_{n/2} otherwise."""
    if n % 2:
        raise ValueError(f"J+ is always even, got {n}")
    return std_p(n // 2, id) if n > 0 else std_k(1 - n // 2, id)


# -- connected sum ------------------------------------------------------

def _outer_edges(curve: Immersion):
    """Edges carried by a single arc that borders the outer face, with the side."""
    arr = build_arrangement(CurveSystem(curve))
    count = {}
    for arc in arr.arcs:
        count[arc.edge] = count.get(arc.edge, 0) + 1
    out = []
    for arc in arr.arcs:
        if count[arc.edge] != 1:
            continue
        if arc.right == arr.outer_face:
            out.append((arc.edge, "right"))
        elif arc.left == arr.outer_face:
            out.append((arc.edge, "left"))
    return out


def _strictly_inside_quad(p, quad) -> bool:
    signs = [orient(quad[i], quad[(i + 1) % 4], p) for i in range(4)]
    return all(s > 0 for s in signs) or all(s < 0 for s in signs)


def connected_sum(a: Immersion, b: Immersion, id: str | None = None,
                  max_tries: int = 4) -> Immersion:
    """Connected sum of two curves with outer-face bridges.

    ``b`` is translated to the right of ``a``; one outer edge of each is
    removed and two non-crossing bridges close the result.  Both removed
    edges must see the outer face on the same side so the bridge band
    inherits the windings of the faces it merges.  When no such pair
    works ``b`` is reversed, which leaves J+ unchanged.
    """
    a = Immersion(a.id, a.vertices)
    b = Immersion(b.id, b.vertices)
    ea = _outer_edges(a)
    for candidate in (b, b.reversed()):
        result = _sum_attempt(a, ea, candidate, max_tries)
        if result is not None:
            return Immersion(a.id if id is None else id, result.vertices)
    raise ConstructionError("no pair of outer edges admits non-crossing bridges")


def _sum_attempt(a, ea, b, max_tries):
    eb = _outer_edges(b)
    ax0, ay0, ax1, ay1 = a.bbox()
    bx0, by0, bx1, by1 = b.bbox()
    gap = max(ax1 - ax0, bx1 - bx0, 1)
    for _ in range(max_tries):
        moved = b.translated(ax1 - bx0 + gap, ay0 - by0)
        union = CurveSystem((a.relabeled("a"), moved.relabeled("b")))
        if validate_generic(union):
            gap *= 2
            continue
        arr = build_arrangement(union)
        ca = sorted(ea, key=lambda e: (-max(p.x for p in a.edge(e[0])), e[0]))
        cb = sorted(eb, key=lambda e: (min(p.x for p in moved.edge(e[0])), e[0]))
        for ia, side_a in ca:
            for ib, side_b in cb:
                if side_a != side_b:
                    continue
                result = _try_bridge(a, ia, moved, ib, arr)
                if result is not None:
                    return result
        gap *= 2
    return None


def _try_bridge(a, ia, b, ib, arr):
    p, q = a.edge(ia)
    r, s = b.edge(ib)
    if segment_intersection((p, s), (r, q)).kind != "disjoint":
        return None
    quad = (p, s, r, q)
    for curve in (a, b):
        for v in curve.vertices:
            if v not in quad and _strictly_inside_quad(v, quad):
                return None
    for bridge in ((p, s), (r, q)):
        for curve in (a, b):
            for j, seg in enumerate(curve.edges()):
                if seg[0] in bridge or seg[1] in bridge:
                    continue
                if segment_intersection(bridge, seg).kind != "disjoint":
                    return None
        mid = Point((bridge[0].x + bridge[1].x) / 2, (bridge[0].y + bridge[1].y) / 2)
        if face_of_point(arr, mid) != arr.outer_face:
            return None
    result = splice(a, ia, b, ib)
    if validate_generic(CurveSystem(result)):
        return None
    return result


# -- two-curve systems --------------------------------------------------

@dataclass(frozen=True)
class PairTarget:
    x: int
    y: int
    z: int

    def __post_init__(self):
        odd = [name for name in ("x", "y", "z") if getattr(self, name) % 2]
        if odd:
            raise ValueError(f"J+ and J2+ values are even; got odd {', '.join(odd)}")

    @property
    def d(self) -> int:
        return self.z - self.x - self.y


def disjoint_pair(s1: Immersion, s2: Immersion, gap=None) -> CurveSystem:
    """Place ``s2`` to the right of ``s1`` with bottoms aligned."""
    ax0, ay0, ax1, ay1 = s1.bbox()
    bx0, by0, bx1, by1 = s2.bbox()
    gap = F(1) if gap is None else F(gap)
    return CurveSystem.pair(s1, s2.translated(ax1 - bx0 + gap, ay0 - by0))


def _first_curve(x: int, m: int, id: str = "S1") -> Immersion:
    """L_m summed with the family member that tops its J+ up to ``x``.

    The partner sits to the right, its left edge bridged to the spiral's
    right edge.  The spiral keeps its template coordinates.
    """
    spiral = std_l(m, id)
    size = _l_size(m)
    partner_value = x + m + m * m
    partner = curve_with_j_plus(partner_value, id)
    x0, y0, x1, y1 = partner.bbox()
    scale = F(_K_HEIGHT) / (y1 - y0)
    partner = partner.transformed(scale, size + 2 - x0 * scale, -y0 * scale)
    ib = _side_edge(partner, "left")
    ia = _edge_index(spiral, (size, 0), (size, size))
    return splice(spiral, ia, partner, ib, id)


def _second_curve(y: int, m: int, finger: str | None) -> Immersion:
    """The curve with J+ = y, placed left of the spiral, optionally with a finger.

    ``finger`` is ``None``, ``"plain"`` (a finger through the m outer
    spiral strands) or ``"curl"`` (one inner curl moved to the finger tip).
    """
    lo, hi = F(2 * m + 5, 2), F(2 * m + 7, 2)
    if finger == "curl":
        i = 1 - y // 2
        base = std_k(i - 1, "S2")
    else:
        base = curve_with_j_plus(y, "S2")
    x0, y0, x1, y1 = base.bbox()
    scale = F(_K_HEIGHT) / (y1 - y0)
    base = base.transformed(scale, -2 - x1 * scale, m - y0 * scale)
    if finger is None:
        return Immersion("S2", base.vertices)
    right = F(-2)
    j = _side_edge(base, "right")
    bottom, top = sorted(p.y for p in base.edge(j))
    if not (bottom < lo and hi < top):
        raise ConstructionError("finger does not fit on the right edge")
    if finger == "curl":
        tip = m - F(1, 8)
        s = F(1, 8)
        c = lo + F(1, 4)
        path = [(right, lo), (tip, lo), (tip, c), (tip - 3 * s, c + 3 * s),
                (tip - 3 * s, c + s), (tip, c + 4 * s), (tip, hi), (right, hi)]
    else:
        tip = m - F(1, 2)
        path = [(right, lo), (tip, lo), (tip, hi), (right, hi)]
    v = list(base.vertices)
    v[j + 1:j + 1] = [Point(F(px), F(py)) for px, py in path]
    return Immersion("S2", v)


def construct_start_pair(target: PairTarget) -> CurveSystem:
    """The disjoint pair the homotopy starts from: J2+ = x + y."""
    if target.d == 0:
        return disjoint_pair(curve_with_j_plus(target.x, "S1"), curve_with_j_plus(target.y, "S2"))
    m = abs(target.d) // 2
    s1 = _first_curve(target.x, m)
    s2 = _second_curve(target.y, m, None)
    if target.d > 0:
        s2 = s2.reversed()
    return CurveSystem((s1, s2))


def construct_pair(target: PairTarget | tuple, check: bool = True) -> CurveSystem:
    """A pair with J+(S1) = x, J+(S2) = y and J2+ = z.

    For z = x + y the curves are placed side by side.  Otherwise S1 is
    a standard curve summed with the spiral L_m, m = |z - x - y| / 2.
    For z > x + y a reversed S2 pushes a finger across the m outer spiral
    strands, each pass a direct tangency.  For z < x + y a positive S2 is
    either nested in the spiral face of winding m (when its rotation
    number is 1) or sends one of its curls into that face on a finger.
    """
    if not isinstance(target, PairTarget):
        target = PairTarget(*target)
    d = target.d
    if d == 0:
        system = construct_start_pair(target)
    else:
        m = abs(d) // 2
        s1 = _first_curve(target.x, m)
        if d > 0:
            s2 = _second_curve(target.y, m, "plain").reversed()
        elif target.y >= 0:
            s2 = _nested_second_curve(target.y, m)
        else:
            s2 = _second_curve(target.y, m, "curl")
        system = CurveSystem((s1, s2))
    if check:
        verify_pair(system, target)
    return system


def _nested_second_curve(y: int, m: int) -> Immersion:
    base = curve_with_j_plus(y, "S2")
    x0, y0, x1, y1 = base.bbox()
    scale = min(F(1, 2) / (x1 - x0), F(1) / (y1 - y0))
    return base.transformed(scale, m - F(3, 4) - x0 * scale, m + 2 - y0 * scale)


def verify_pair(system: CurveSystem, target: PairTarget) -> None:
    got = (j_plus(CurveSystem(system[0])), j_plus(CurveSystem(system[1])),
           analyze(system).j2_plus)
    want = (target.x, target.y, target.z)
    if got != want:
        raise ConstructionError(f"constructed pair has (J+(S1), J+(S2), J2+) = {got}, "
                                f"expected {want}")
