"""Exact local homotopy events on curve systems.

Each move is a small surgery on the polylines: a thin finger pushed along a
route (positive tangency passes), the retraction of an empty bigon (a
negative pass) or a strand swept over a crossing (a triple-point pass).
The event type is decided from orientations while the surgery is built,
and every record carries the invariant change it predicts.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, GenericityError, build_arrangement
from .curves import CurveError, CurveSystem, Immersion
from .geom import (DISJOINT, OnCurveError, Point, TRANSVERSAL, cross, dot, lerp, on_segment,
                   orient, segment_intersection, segment_parameter, sign, winding_number)
from .invariants import InvariantReport, analyze, winding_numbers

DIRECT = "direct-tangency"
INVERSE = "inverse-tangency"
TRIPLE = "triple-point"

_MAX_HALVINGS = 40


class MoveError(ValueError):
    """A move request whose preconditions do not hold."""


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    sign: str | None                  # "positive", "negative"; None for triple points
    scope: str                        # "self-S1", "self-S2" or "between-S1-S2"
    local_windings: tuple[int, ...]   # (x, y, z, s); (x,) for a triple point
    predicted_delta: int
    version: int | None = None
    new_winding: int | None = None    # winding of the triangle a triple point creates
    u_sq_delta: int = 0               # predicted change of u**2
    u_case: int | None = None         # between-curve passes: 1 curves already meet, 2 they did not

    @property
    def crossing_delta(self) -> int:
        return {"positive": 2, "negative": -2, None: 0}[self.sign]

    def pattern_ok(self) -> bool:
        """Do the local windings fit the pattern of the recorded kind?"""
        if self.kind == TRIPLE:
            return len(self.local_windings) == 1 and self.version in (1, 2, 3, 4)
        x, y, z, s = self.local_windings
        if self.kind == DIRECT:
            return x == z + 1 and y == z - 1 and s == z
        return (x == y == z + 1 and s == z + 2) or (x == y == z - 1 and s == z - 2)

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "sign": self.sign, "scope": self.scope,
               "local_windings": list(self.local_windings),
               "predicted_delta": self.predicted_delta}
        if self.version is not None:
            out["version"] = self.version
            out["new_winding"] = self.new_winding
        if self.u_case is not None:
            out["u_case"] = self.u_case
            out["u_sq_delta"] = self.u_sq_delta
        return out


def _scope(a: int, b: int) -> str:
    return f"self-S{a + 1}" if a == b else "between-S1-S2"


def _resolve_component(system: CurveSystem, which) -> int:
    if isinstance(which, str):
        try:
            return system.index_of(which)
        except KeyError:
            raise MoveError(f"no curve {which!r}") from None
    if not 0 <= which < len(system):
        raise MoveError(f"no component {which}")
    return which


def _splice_path(verts: list, j1: int, j2: int, path: list) -> list:
    """Replace the curve strictly between edge j1 and edge j2 (vertices
    j1+1 .. j2, cyclically) by ``path``."""
    if j2 >= j1:
        return verts[:j1 + 1] + path + verts[j2 + 1:]
    return verts[j2 + 1:j1 + 1] + path


def _rebuild(system: CurveSystem, comp: int, verts) -> tuple[CurveSystem, Arrangement] | None:
    try:
        new = system.replace(comp, Immersion(system[comp].id, verts))
        return new, build_arrangement(new)
    except (CurveError, GenericityError):
        return None


def _inside_or_on(p, polygon: Sequence) -> bool:
    segs = list(zip(polygon, polygon[1:] + polygon[:1]))
    try:
        return winding_number(p, segs) != 0
    except OnCurveError:
        return True


def _in_parallelogram(p, quad) -> bool:
    signs = {orient(quad[i], quad[(i + 1) % 4], p) for i in range(4)}
    return not (1 in signs and -1 in signs)


def _inter_count(arr: Arrangement) -> int:
    return sum(1 for c in arr.crossings if not c.is_self)


def _crossing_id(arr: Arrangement, c) -> int:
    if isinstance(c, int):
        if not 0 <= c < arr.n:
            raise MoveError(f"no crossing {c}")
        return c
    p = Point.of(*c)
    for crossing in arr.crossings:
        if crossing.position == p:
            return crossing.id
    raise MoveError(f"no crossing at {p}")


# -- finger pushes -----------------------------------------------------

@dataclass
class _Hit:
    segment: int
    t: Fraction
    arc: int
    point: Point


def _route_hits(arr: Arrangement, comp: int, edge: int, route: list[Point]) -> list[_Hit]:
    start = route[0]
    for i in range(len(route) - 1):
        if route[i] == route[i + 1]:
            raise MoveError("route has a repeated point")
    for i in range(len(route) - 2):
        d1, d2 = route[i + 1] - route[i], route[i + 2] - route[i + 1]
        if cross(d1, d2) == 0 and d1[0] * d2[0] + d1[1] * d2[1] < 0:
            raise MoveError("route folds back on itself")
    for i in range(len(route) - 1):
        for j in range(i + 2, len(route) - 1):
            if segment_intersection(route[i:i + 2], route[j:j + 2]).kind != DISJOINT:
                raise MoveError("route is not simple")
    hits = []
    for i in range(len(route) - 1):
        seg = (route[i], route[i + 1])
        for arc in arr.arcs:
            a, b = arr.arc_segment(arc.id)
            hit = segment_intersection(seg, (a, b))
            if hit.kind == DISJOINT:
                continue
            if i == 0 and arc.component == comp and arc.edge == edge and on_segment(start, a, b):
                if cross(seg[1] - seg[0], b - a) == 0:
                    raise MoveError("route leaves the anchor edge along it")
                if hit.point == start and hit.kind != TRANSVERSAL:
                    continue
            if hit.kind != TRANSVERSAL:
                raise MoveError(f"route meets the curves non-transversally at {hit.point}")
            hits.append(_Hit(i, segment_parameter(hit.point, *seg), arc.id, hit.point))
    hits.sort(key=lambda h: (h.segment, h.t))
    for h1, h2 in zip(hits, hits[1:]):
        if h1.point == h2.point:
            raise MoveError(f"route passes through crossing {h1.point}")
    return hits


def finger_push(system: CurveSystem, anchor, route) -> tuple[CurveSystem, list[MoveRecord]]:
    """Push a thin finger out of edge ``anchor = (curve, edge)`` along ``route``.

    ``route[0]`` must lie inside the anchor edge and the last point off all
    curves.  Every arc the route crosses becomes one positive tangency pass.
    """
    comp = _resolve_component(system, anchor[0])
    edge = anchor[1]
    curve = system[comp]
    if not 0 <= edge < len(curve):
        raise MoveError(f"{curve.id} has no edge {edge}")
    route = [Point.of(*p) for p in route]
    if len(route) < 2:
        raise MoveError("a route needs at least two points")
    arr = build_arrangement(system)
    a, b = curve.edge(edge)
    start = route[0]
    if not on_segment(start, a, b) or start in (a, b):
        raise MoveError("route must start inside the anchor edge")
    t0 = segment_parameter(start, a, b)
    stops = [Fraction(0), Fraction(1)]
    for x in arr.crossings:
        if (comp, edge) in x.edges:
            stops.append(segment_parameter(x.position, a, b))
    if t0 in stops:
        raise MoveError("route starts at a crossing")
    hits = _route_hits(arr, comp, edge, route)

    eps = min(abs(t0 - s) for s in stops) / 2
    old_nodes = list(arr.node_pos)
    old_segments = list(system.segments())
    for _ in range(_MAX_HALVINGS):
        delta = (b - a).scale(eps)
        out = [p - delta for p in route]
        back = [p + delta for p in reversed(route)]
        built = _rebuild(system, comp, _splice_path(list(curve.vertices), edge, edge, out + back))
        eps /= 2
        if built is None or built[1].n != arr.n + 2 * len(hits):
            continue
        tip = (out[-1], back[0])
        if any(segment_intersection(tip, s).kind != DISJOINT for s in old_segments):
            continue
        quads = [(out[i], out[i + 1], route[i + 1] + delta, route[i] + delta)
                 for i in range(len(route) - 1)]
        if any(_in_parallelogram(p, q) for q in quads for p in old_nodes):
            continue
        break
    else:
        raise MoveError("no finger width keeps the tube clear of the curves")

    w = winding_numbers(arr)
    intersecting = len(system) == 2 and _inter_count(arr) > 0
    records = []
    for h in hits:
        arc = arr.arcs[h.arc]
        r = route[h.segment + 1] - route[h.segment]
        strand = arr.node_pos[arc.head] - arr.node_pos[arc.tail]
        before, after = (arc.right, arc.left) if cross(strand, r) > 0 else (arc.left, arc.right)
        side = sign(cross(r, delta))       # +1 when the tube interior is left of its outgoing side
        z, far = w[before], w[after]
        fin = z + side
        direct = side == sign(cross(r, strand))
        scope = _scope(comp, arc.component)
        u_sq, u_case = 0, None
        if scope.startswith("between"):
            u_case = 1 if intersecting else 2
            if not intersecting:
                u_sq = -z * z
            intersecting = True
        records.append(MoveRecord(DIRECT if direct else INVERSE, "positive", scope,
                                  (max(fin, far), min(fin, far), z, far + side),
                                  2 if direct else 0, u_sq_delta=u_sq, u_case=u_case))
    return built[0], records


# -- bigon retraction --------------------------------------------------

def _split_cycle(arr: Arrangement, cycle: tuple[int, ...], start_node: int):
    """Cut a face cycle at its crossing nodes, starting at ``start_node``."""
    k = next(i for i, h in enumerate(cycle) if arr.he_origin[h] == start_node)
    cyc = cycle[k:] + cycle[:k]
    chains, cur = [], []
    for h in cyc:
        cur.append(h)
        if arr.node_crossing[arr.he_dest[h]] is not None:
            chains.append(cur)
            cur = []
    return chains


def _strand_run(arr: Arrangement, chain: list[int]):
    """Arcs of a boundary chain in curve order, with entry and exit crossings."""
    arcs = [h // 2 for h in chain]
    if chain[0] % 2:
        arcs.reverse()
    first, last = arr.arcs[arcs[0]], arr.arcs[arcs[-1]]
    return arcs, first.tail, last.head


def _arc_before(arr: Arrangement, node: int, arc: int) -> int:
    for br in arr.crossings[arr.node_crossing[node]].branches:
        if br.outgoing == arc:
            return br.incoming
    raise AssertionError("arc does not leave this crossing")


def _arc_after(arr: Arrangement, node: int, arc: int) -> int:
    for br in arr.crossings[arr.node_crossing[node]].branches:
        if br.incoming == arc:
            return br.outgoing
    raise AssertionError("arc does not reach this crossing")


def _chain_nodes(arr: Arrangement, chain: list[int]) -> list[int]:
    return [arr.he_origin[h] for h in chain] + [arr.he_dest[chain[-1]]]


def _offset_path(points: list[Point], side: int, eta) -> list[Point]:
    """Miter points offsetting the interior vertices of a polyline by about
    ``eta`` to its left (``side`` 1) or right (``side`` -1)."""
    out = []
    for u, v, w in zip(points, points[1:], points[2:]):
        n1 = Point(-(v.y - u.y) * side, (v.x - u.x) * side)
        n2 = Point(-(w.y - v.y) * side, (w.x - v.x) * side)
        k1 = dot(v, n1) + eta * max(abs(n1.x), abs(n1.y))
        k2 = dot(v, n2) + eta * max(abs(n2.x), abs(n2.y))
        det = cross(n1, n2)
        if det == 0:
            out.append(v + n1.scale(eta / max(abs(n1.x), abs(n1.y))))
        else:
            out.append(Point((k1 * n2.y - k2 * n1.y) / det, (n1.x * k2 - n2.x * k1) / det))
    return out


def _reroute(system: CurveSystem, arr: Arrangement, arcs: list[int], entry: int, exit_: int,
             guide: list[int], side: int, expect_n: int):
    """Replace the run ``arcs`` (curve order, crossing node ``entry`` to
    ``exit_``) by a path hugging the node chain ``guide`` (same ends) on
    ``side``.  The region swept over must hold exactly the interior nodes
    of ``guide``.  Returns the rebuilt system and arrangement."""
    comp = arr.arcs[arcs[0]].component
    prev = arr.arcs[_arc_before(arr, entry, arcs[0])]
    nxt = arr.arcs[_arc_after(arr, exit_, arcs[-1])]
    p_in, p_out = arr.node_pos[entry], arr.node_pos[exit_]
    tail, head = arr.node_pos[prev.tail], arr.node_pos[nxt.head]
    old_path = [arr.node_pos[arr.arcs[k].tail] for k in arcs] + [p_out]
    on_path = set(old_path)
    guide_pts = [arr.node_pos[v] for v in guide]
    must = set(guide_pts[1:-1])
    scale = min(max(abs(q.x - p.x), abs(q.y - p.y)) for p, q in zip(guide_pts, guide_pts[1:]))
    eps = Fraction(1, 4)
    for _ in range(_MAX_HALVINGS):
        q1, q2 = lerp(p_in, tail, eps), lerp(p_out, head, eps)
        path = [q1] + _offset_path(guide_pts, side, eps * scale) + [q2]
        if prev.edge == nxt.edge and len(arcs) > 1:
            verts = path          # the run wraps round the whole curve
        else:
            verts = _splice_path(list(system[comp].vertices), prev.edge, nxt.edge, path)
        eps /= 2
        built = _rebuild(system, comp, verts)
        if built is None or built[1].n != expect_n:
            continue
        polygon = [q1] + old_path + [q2] + list(reversed(path[1:-1]))
        swept = {p for p in arr.node_pos if p not in on_path and _inside_or_on(p, polygon)}
        if swept != must:
            continue
        return built
    raise MoveError("no nearby reroute keeps the surgery clean")


def _bigon_faces(arr: Arrangement, c1: int, c2: int) -> list[int]:
    out = []
    for f in sorted(set(arr.crossings[c1].quadrants) & set(arr.crossings[c2].quadrants)):
        face = arr.faces[f]
        if face.is_outer or face.holes:
            continue
        if sorted(arr.face_crossings(f)) == sorted([c1, c2]):
            out.append(f)
    return out


def retract_pass(system: CurveSystem, crossing_pair, inside=None) -> tuple[CurveSystem, MoveRecord]:
    """Remove the empty bigon bounded by two crossings (a negative pass).

    Two crossings can bound two bigons; ``inside``, a point of the wanted
    bigon, then picks one.
    """
    arr = build_arrangement(system)
    c1, c2 = (_crossing_id(arr, c) for c in crossing_pair)
    if c1 == c2:
        raise MoveError("a bigon needs two distinct crossings")
    faces = _bigon_faces(arr, c1, c2)
    if inside is not None:
        try:
            faces = [f for f in faces if arr.contains(f, Point.of(*inside))]
        except OnCurveError:
            raise MoveError("the bigon point lies on a curve") from None
    if not faces:
        raise MoveError(f"crossings {c1} and {c2} do not bound an empty bigon")
    if len(faces) > 1:
        raise MoveError(f"crossings {c1} and {c2} bound two bigons; give a point inside one")
    f = faces[0]
    # the side with fewer arcs stays; the other is pulled across it
    stay, mover = sorted(_split_cycle(arr, arr.faces[f].cycle, c1), key=len)
    arcs, entry, exit_ = _strand_run(arr, mover)
    guide = _chain_nodes(arr, stay)          # bigon on its left
    side = -1
    if guide[0] != entry:
        guide.reverse()
        side = 1
    new, _ = _reroute(system, arr, arcs, entry, exit_, guide, side, arr.n - 2)
    stay_arcs, stay_from, _ = _strand_run(arr, stay)
    stay_arc = arr.arcs[stay_arcs[0]]

    w = winding_numbers(arr)
    quads = arr.crossings[c1].quadrants
    k = quads.index(f)
    s, z = w[quads[k]], w[quads[(k + 2) % 4]]
    x, y = sorted((w[quads[(k + 1) % 4]], w[quads[(k + 3) % 4]]), reverse=True)
    direct = stay_from == entry
    scope = _scope(arr.arcs[arcs[0]].component, stay_arc.component)
    u_sq, u_case = 0, None
    if scope.startswith("between"):
        u_case = 2 if _inter_count(arr) == 2 else 1
        u_sq = z * z if u_case == 2 else 0
    record = MoveRecord(DIRECT if direct else INVERSE, "negative", scope, (x, y, z, s),
                        -2 if direct else 0, u_sq_delta=u_sq, u_case=u_case)
    return new, record


# -- triple points -----------------------------------------------------

def _triangle(arr: Arrangement, c: int, comp: int, edge: int):
    for f in sorted(set(arr.crossings[c].quadrants)):
        face = arr.faces[f]
        if face.is_outer or face.holes:
            continue
        corners = arr.face_crossings(f)
        if len(corners) != 3 or len(set(corners)) != 3 or c not in corners:
            continue
        chains = _split_cycle(arr, face.cycle, c)
        if any((arr.arcs[h // 2].component, arr.arcs[h // 2].edge) == (comp, edge)
               for h in chains[1]):
            return f, chains
    return None


def triple_version(left_before: bool, left_moving: bool, left_after: bool) -> int:
    """Orientation class of a vanishing triangle.

    Arguments tell, for the side before the moving side, the moving side and
    the side after it (counterclockwise around the triangle), whether the
    triangle lies on the left of that strand.
    """
    if left_before == left_moving == left_after:
        return 2
    if left_before == left_after:
        return 1
    return 3 if left_after == left_moving else 4


def triple_pass(system: CurveSystem, moving_edge, crossing) -> tuple[CurveSystem, MoveRecord]:
    """Sweep the strand through ``moving_edge`` across ``crossing``."""
    arr = build_arrangement(system)
    comp = _resolve_component(system, moving_edge[0])
    c = _crossing_id(arr, crossing)
    found = _triangle(arr, c, comp, moving_edge[1])
    if found is None:
        raise MoveError(f"edge {moving_edge} and crossing {c} do not bound an empty triangle")
    f, chains = found
    arcs, entry, exit_ = _strand_run(arr, chains[1])
    # the other two sides, walked through the corner; triangle on the left
    guide = _chain_nodes(arr, chains[2]) + _chain_nodes(arr, chains[0])[1:]
    side = -1
    if guide[0] != entry:
        guide.reverse()
        side = 1
    new, _ = _reroute(system, arr, arcs, entry, exit_, guide, side, arr.n)

    lefts = [ch[0] % 2 == 0 for ch in chains]
    version = triple_version(lefts[0], lefts[1], lefts[2])
    x = winding_numbers(arr)[f]
    comps = {arr.arcs[ch[0] // 2].component for ch in chains}
    scope = _scope(comp, comp) if len(comps) == 1 else "between-S1-S2"
    record = MoveRecord(TRIPLE, None, scope, (x,), 0, version=version,
                        new_winding=x + 3 - 2 * sum(lefts))
    return new, record


# -- harness -----------------------------------------------------------

@dataclass
class MoveResult:
    request: dict
    before: InvariantReport
    after: InvariantReport
    records: list[MoveRecord]
    system: CurveSystem = field(repr=False)

    @property
    def predicted(self) -> int:
        return sum(r.predicted_delta for r in self.records)

    @property
    def measured(self) -> int:
        return self.after.value - self.before.value

    def problems(self) -> list[str]:
        """Every way the outcome disagrees with the records; empty when consistent."""
        out = []
        if self.measured != self.predicted:
            out.append(f"invariant changed by {self.measured}, predicted {self.predicted}")
        dn = self.after.n - self.before.n
        if dn != sum(r.crossing_delta for r in self.records):
            out.append(f"crossing count changed by {dn}")
        out += [f"record {r.as_dict()} breaks its winding pattern"
                for r in self.records if not r.pattern_ok()]
        if self.before.u is not None:
            du = self.after.u ** 2 - self.before.u ** 2
            want = sum(r.u_sq_delta for r in self.records)
            if du != want:
                out.append(f"u^2 changed by {du}, predicted {want}")
        return out

    def as_dict(self) -> dict:
        key = "j_plus" if self.before.j2_plus is None else "j2_plus"
        return {"request": self.request, "records": [r.as_dict() for r in self.records],
                "before": {key: self.before.value, "n": self.before.n, "u": self.before.u},
                "after": {key: self.after.value, "n": self.after.n, "u": self.after.u},
                "predicted_delta": self.predicted, "measured_delta": self.measured}


def apply_move(system: CurveSystem, request: dict) -> MoveResult:
    """Run one scripted move.

    Requests are dicts with ``op`` in ``finger``, ``retract`` or ``triple``:
    ``{"op": "finger", "curve": id, "edge": j, "route": [[x, y], ...]}``,
    ``{"op": "retract", "crossings": [[x, y], [x, y]], "inside": [x, y]}``
    (``inside`` optional) and
    ``{"op": "triple", "curve": id, "edge": j, "crossing": [x, y]}``.
    Crossings may be given by position or by id in the current system.
    """
    before = analyze(system)
    op = request.get("op")
    if op == "finger":
        new, records = finger_push(system, (request["curve"], request["edge"]), request["route"])
    elif op == "retract":
        new, rec = retract_pass(system, request["crossings"], request.get("inside"))
        records = [rec]
    elif op == "triple":
        new, rec = triple_pass(system, (request["curve"], request["edge"]), request["crossing"])
        records = [rec]
    else:
        raise MoveError(f"unknown move {op!r}")
    return MoveResult(request, before, analyze(new), records, new)


def _pt(p) -> list[str]:
    return [str(p.x), str(p.y)]


def bigons(arr: Arrangement) -> list[tuple[tuple[int, int], int]]:
    """Every empty bigon as ((crossing, crossing), face)."""
    out = []
    for f, face in enumerate(arr.faces):
        if face.is_outer or face.holes:
            continue
        cs = arr.face_crossings(f)
        if len(cs) == 2 and cs[0] != cs[1]:
            out.append((tuple(sorted(cs)), f))
    return out


def triangles(arr: Arrangement) -> list[tuple[int, int, int]]:
    """(crossing, component, edge) triples that name a sweepable triangle."""
    out = []
    for f, face in enumerate(arr.faces):
        if face.is_outer or face.holes:
            continue
        cs = arr.face_crossings(f)
        if len(cs) != 3 or len(set(cs)) != 3:
            continue
        for c in cs:
            chains = _split_cycle(arr, face.cycle, c)
            arc = arr.arcs[chains[1][0] // 2]
            out.append((c, arc.component, arc.edge))
    return out


def random_request(system: CurveSystem, rng: random.Random) -> dict:
    """Draw one move request; it may still be rejected by the move itself."""
    arr = build_arrangement(system)
    choice = rng.random()
    if choice < 0.25:
        options = bigons(arr)
        if options:
            pair, f = rng.choice(options)
            return {"op": "retract", "crossings": [_pt(arr.crossings[c].position) for c in pair],
                    "inside": _pt(arr.sample_point(f))}
    elif choice < 0.5:
        options = triangles(arr)
        if options:
            c, comp, edge = rng.choice(options)
            return {"op": "triple", "curve": system[comp].id, "edge": edge,
                    "crossing": _pt(arr.crossings[c].position)}
    comp = rng.randrange(len(system))
    curve = system[comp]
    edge = rng.randrange(len(curve))
    a, b = curve.edge(edge)
    start = lerp(a, b, Fraction(rng.randint(1, 15), 16))
    if choice < 0.75 and arr.n:
        # aim just past a crossing so the finger sets up a triangle
        target = rng.choice(arr.crossings).position
        off = Fraction(1, rng.choice([4, 8, 16]))
        end = target + (target - start).scale(off) + Point(off * rng.choice([-1, 1]) / 3,
                                                           off * rng.choice([-1, 1]) / 5)
    else:
        end = arr.sample_point(rng.randrange(len(arr.faces)))
    return {"op": "finger", "curve": curve.id, "edge": edge, "route": [_pt(start), _pt(end)]}


def random_walk(system: CurveSystem, steps: int, rng: random.Random, attempts: int = 50):
    """Apply up to ``steps`` random valid moves, yielding each MoveResult."""
    for _ in range(steps):
        for _ in range(attempts):
            request = random_request(system, rng)
            try:
                result = apply_move(system, request)
            except MoveError:
                continue
            break
        else:
            return
        system = result.system
        yield result
