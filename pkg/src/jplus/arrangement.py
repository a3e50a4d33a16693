"""Planar subdivision induced by a one- or two-curve system.

Polyline vertices stay in the graph as degree-2 nodes and every crossing
becomes a degree-4 node.  Faces are traced on half-edges, each face lying
on the left of its boundary half-edges.
"""
from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .curves import CurveSystem, immersion_problems
from .geom import (DEGENERATE, as_integers, integer_frame, TRANSVERSAL, OnCurveError, Point, SegmentIndex, angle_key,
                   cross, on_segment, segment_intersection, segment_parameter,
                   signed_area2, winding_number)

EdgeRef = tuple  # (component index, edge index)


class Violation(NamedTuple):
    kind: str
    location: Point | None
    detail: str

    def __str__(self) -> str:
        where = "" if self.location is None else f" at ({self.location.x}, {self.location.y})"
        return f"{self.kind}{where}: {self.detail}"


class GenericityError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def _edge_list(system: CurveSystem):
    refs, segs = [], []
    for c, curve in enumerate(system.components):
        for j, seg in enumerate(curve.edges()):
            refs.append((c, j))
            segs.append(seg)
    return refs, segs


def _adjacent(r1, r2, system) -> bool:
    if r1[0] != r2[0]:
        return False
    n = len(system.components[r1[0]])
    return (r1[1] - r2[1]) % n in (1, n - 1)


def _pairwise(system: CurveSystem):
    """All contacts between non-adjacent edges: list of (ref1, ref2, Intersection)."""
    refs, segs = _edge_list(system)
    den = integer_frame(p for c in system for p in c.vertices)
    segs = [(as_integers(a, den), as_integers(b, den)) for a, b in segs]
    index = SegmentIndex(segs)
    found = []
    for i, j in sorted(index.candidate_pairs()):
        if _adjacent(refs[i], refs[j], system):
            continue
        hit = segment_intersection(segs[i], segs[j])
        if hit.kind != "disjoint":
            p = hit.point
            point = Point(Fraction(p[0]) / den, Fraction(p[1]) / den)
            found.append((refs[i], refs[j], hit._replace(point=point)))
    return found


def _check(system: CurveSystem):
    violations = []
    for curve in system.components:
        for problem in immersion_problems(curve):
            violations.append(Violation("immersion", None, f"{curve.id}: {problem}"))
    if violations:
        return violations, []
    hits = _pairwise(system)
    transversal = []
    by_point = defaultdict(set)
    for r1, r2, hit in hits:
        names = (f"{system[r1[0]].id}[{r1[1]}]", f"{system[r2[0]].id}[{r2[1]}]")
        if hit.kind == DEGENERATE:
            kind = "collinear overlap" if hit.detail == "collinear-overlap" else "tangential contact"
            violations.append(Violation(kind, hit.point,
                                        f"{hit.detail} between edges {names[0]} and {names[1]}"))
        else:
            transversal.append((r1, r2, hit.point))
            by_point[hit.point].update((r1, r2))
    for point in sorted(by_point):
        edges = by_point[point]
        if len(edges) > 2:
            violations.append(Violation("triple point", point,
                                        f"{len(edges)} strands pass through one point"))
    return violations, transversal


def validate_generic(system: CurveSystem) -> list[Violation]:
    """Return every genericity violation of ``system``; an empty list means generic."""
    return _check(system)[0]


@dataclass(frozen=True)
class Branch:
    component: int
    incoming: int      # arc id ending at the crossing
    outgoing: int      # arc id starting at the crossing
    direction: tuple   # direction vector of the carrying edge


@dataclass(frozen=True)
class Crossing:
    id: int
    position: Point
    branches: tuple[Branch, Branch]
    edges: tuple[EdgeRef, EdgeRef]
    quadrants: tuple[int, int, int, int]   # faces, counterclockwise around position
    outgoing: tuple[int, int, int, int]    # half-edges whose left faces are the quadrants

    @property
    def is_self(self) -> bool:
        return self.branches[0].component == self.branches[1].component


@dataclass(frozen=True)
class Arc:
    id: int
    component: int
    edge: int          # index of the polyline edge that carries the arc
    tail: int          # node ids
    head: int
    left: int          # face ids
    right: int


@dataclass
class Face:
    id: int
    cycle: tuple[int, ...] | None     # positive boundary cycle (half-edges); None for outer
    holes: list[tuple[int, ...]] = field(default_factory=list)
    parent: int | None = None         # face surrounding the curve piece that bounds this face

    @property
    def is_outer(self) -> bool:
        return self.cycle is None


class Arrangement:
    """Crossings, arcs and faces of a generic curve system (immutable once built)."""

    def __init__(self, system: CurveSystem):
        violations, transversal = _check(system)
        if violations:
            raise GenericityError(violations)
        self.source = system
        self._build(transversal)

    # -- construction -------------------------------------------------
    def _build(self, transversal):
        system = self.source
        points = sorted({p for _, _, p in transversal})
        crossing_of = {p: k for k, p in enumerate(points)}
        on_edge = defaultdict(list)
        crossing_edges = {}
        for r1, r2, p in transversal:
            k = crossing_of[p]
            for r in (r1, r2):
                a, b = system[r[0]].edge(r[1])
                on_edge[r].append((segment_parameter(p, a, b), k))
            crossing_edges[k] = tuple(sorted((r1, r2)))

        node_pos: list[Point] = []
        node_crossing: list[int | None] = []
        vertex_node = {}
        for k, p in enumerate(points):
            node_pos.append(p)
            node_crossing.append(k)
        for c, curve in enumerate(system.components):
            for j, v in enumerate(curve.vertices):
                vertex_node[(c, j)] = len(node_pos)
                node_pos.append(v)
                node_crossing.append(None)

        arc_comp, arc_edge, arc_tail, arc_head = [], [], [], []
        for c, curve in enumerate(system.components):
            n = len(curve)
            for j in range(n):
                chain = [vertex_node[(c, j)]]
                chain += [k for _, k in sorted(on_edge.get((c, j), ()))]
                chain.append(vertex_node[(c, (j + 1) % n)])
                for u, v in zip(chain, chain[1:]):
                    arc_comp.append(c)
                    arc_edge.append(j)
                    arc_tail.append(u)
                    arc_head.append(v)

        n_arcs = len(arc_tail)
        # combinatorics run in an integer frame; scaling keeps every sign
        den = integer_frame(node_pos)
        ipos = [as_integers(p, den) for p in node_pos]
        # half-edge 2k runs along arc k, 2k+1 against it
        he_origin = [0] * (2 * n_arcs)
        he_dest = [0] * (2 * n_arcs)
        for k in range(n_arcs):
            he_origin[2 * k], he_dest[2 * k] = arc_tail[k], arc_head[k]
            he_origin[2 * k + 1], he_dest[2 * k + 1] = arc_head[k], arc_tail[k]
        outgoing = defaultdict(list)
        for h in range(2 * n_arcs):
            outgoing[he_origin[h]].append(h)
        rank = {}
        for node, hs in outgoing.items():
            px, py = ipos[node]
            hs.sort(key=lambda h: angle_key((ipos[he_dest[h]][0] - px, ipos[he_dest[h]][1] - py)))
            for i, h in enumerate(hs):
                rank[h] = i
        nxt = [0] * (2 * n_arcs)
        for h in range(2 * n_arcs):
            hs = outgoing[he_dest[h]]
            nxt[h] = hs[rank[h ^ 1] - 1]

        cycle_of = [-1] * (2 * n_arcs)
        cycles = []
        for h in range(2 * n_arcs):
            if cycle_of[h] >= 0:
                continue
            cyc = []
            g = h
            while cycle_of[g] < 0:
                cycle_of[g] = len(cycles)
                cyc.append(g)
                g = nxt[g]
            cycles.append(tuple(cyc))
        areas = [signed_area2([ipos[he_origin[g]] for g in cyc]) for cyc in cycles]

        # connected pieces of the curve union
        parent = list(range(len(node_pos)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for k in range(n_arcs):
            ra, rb = find(arc_tail[k]), find(arc_head[k])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        piece_of_node = [find(v) for v in range(len(node_pos))]
        pieces = sorted(set(piece_of_node))
        piece_index = {r: i for i, r in enumerate(pieces)}

        positive = [i for i, a in enumerate(areas) if a > 0]
        negative = [i for i, a in enumerate(areas) if a < 0]
        if len(negative) != len(pieces) or len(positive) + len(negative) != len(cycles):
            raise AssertionError("face tracing produced an inconsistent set of cycles")

        def key(i):
            cyc = cycles[i]
            return (min(ipos[he_origin[g]] for g in cyc), areas[i], min(cyc))

        positive.sort(key=key)
        face_of_cycle = {}
        faces = [Face(0, None)]
        for i in positive:
            face_of_cycle[i] = len(faces)
            faces.append(Face(len(faces), cycles[i]))

        polygons = {}
        piece_surround = {}
        for i in sorted(negative, key=key):
            piece = piece_index[piece_of_node[he_origin[cycles[i][0]]]]
            probe = ipos[he_origin[cycles[i][0]]]
            best = None
            for j in positive:
                if piece_of_node[he_origin[cycles[j][0]]] == piece_of_node[he_origin[cycles[i][0]]]:
                    continue
                if j not in polygons:
                    polygons[j] = [(ipos[he_origin[g]], ipos[he_dest[g]]) for g in cycles[j]]
                if winding_number(probe, polygons[j]) != 0:
                    if best is None or areas[j] < areas[best]:
                        best = j
            host = 0 if best is None else face_of_cycle[best]
            faces[host].holes.append(cycles[i])
            face_of_cycle[i] = host
            piece_surround[piece] = host
        for i in positive:
            piece = piece_index[piece_of_node[he_origin[cycles[i][0]]]]
            faces[face_of_cycle[i]].parent = piece_surround[piece]

        he_face = [face_of_cycle[cycle_of[h]] for h in range(2 * n_arcs)]
        self.arcs = [Arc(k, arc_comp[k], arc_edge[k], arc_tail[k], arc_head[k],
                         he_face[2 * k], he_face[2 * k + 1]) for k in range(n_arcs)]

        crossings = []
        for k, p in enumerate(points):
            node = k
            hs = tuple(outgoing[node])
            quads = tuple(he_face[h] for h in hs)
            branches = []
            for h in hs:
                if h % 2 == 0:
                    arc_out = h // 2
                    # a crossing is interior to an edge, so the strand arrives
                    # on the arc emitted just before
                    arc_in = arc_out - 1
                    d = node_pos[arc_head[arc_out]] - p
                    branches.append(Branch(arc_comp[arc_out], arc_in, arc_out, (d.x, d.y)))
            branches.sort(key=lambda b: (b.component, b.outgoing))
            crossings.append(Crossing(k, p, tuple(branches), crossing_edges[k], quads, hs))

        self.crossings = crossings
        self.faces = faces
        self.outer_face = 0
        self.node_pos = node_pos
        self.node_crossing = node_crossing
        self.vertex_node = vertex_node
        self.he_origin = he_origin
        self.he_dest = he_dest
        self.he_face = he_face
        self.he_next = nxt
        self.n_pieces = len(pieces)
        self.cycles = cycles

    # -- queries ------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.crossings)

    def euler_characteristic_ok(self) -> bool:
        v = len(self.node_pos)
        e = len(self.arcs)
        f = len(self.faces)
        return v - e + f == 1 + self.n_pieces

    def half_edge_segment(self, h):
        return self.node_pos[self.he_origin[h]], self.node_pos[self.he_dest[h]]

    def arc_segment(self, k):
        arc = self.arcs[k]
        return self.node_pos[arc.tail], self.node_pos[arc.head]

    def face_boundary_nodes(self, f) -> list[int]:
        face = self.faces[f]
        nodes = []
        for cyc in ([face.cycle] if face.cycle else []) + list(face.holes):
            nodes.extend(self.he_origin[h] for h in cyc)
        return nodes

    def face_crossings(self, f) -> list[int]:
        """Crossing ids on the boundary of face ``f`` (with repetition)."""
        return [self.node_crossing[v] for v in self.face_boundary_nodes(f)
                if self.node_crossing[v] is not None]

    def _cycle_segments(self, cyc):
        return [self.half_edge_segment(h) for h in cyc]

    def contains(self, f: int, p) -> bool:
        face = self.faces[f]
        if face.cycle is not None and winding_number(p, self._cycle_segments(face.cycle)) != 1:
            return False
        return all(winding_number(p, self._cycle_segments(hole)) == 0 for hole in face.holes)

    @cached_property
    def _ys(self):
        return sorted({p.y for p in self.node_pos})

    @cached_property
    def sample_points(self) -> list[Point]:
        """One exact interior point per face."""
        return [self.sample_point(f) for f in range(len(self.faces))]

    def sample_point(self, f: int) -> Point:
        cache = self.__dict__.setdefault("_samples", {})
        if f not in cache:
            cache[f] = self._sample(f)
        return cache[f]

    def _sample(self, f) -> Point:
        face = self.faces[f]
        if face.cycle is None:
            xs = [p.x for p in self.node_pos]
            return Point(max(xs) + 1, self._ys[-1] + 1)
        ys = self._ys
        for h in face.cycle:
            a, b = self.half_edge_segment(h)
            if a.y == b.y:
                continue
            lo = min(a.y, b.y)
            y0 = (lo + ys[bisect.bisect_right(ys, lo)]) / 2
            xh = a.x + (b.x - a.x) * (y0 - a.y) / (b.y - a.y)
            upward = b.y > a.y
            best = None
            for k in range(len(self.arcs)):
                p, q = self.arc_segment(k)
                if not (min(p.y, q.y) < y0 < max(p.y, q.y)):
                    continue
                x = p.x + (q.x - p.x) * (y0 - p.y) / (q.y - p.y)
                if upward and x < xh and (best is None or x > best):
                    best = x
                if not upward and x > xh and (best is None or x < best):
                    best = x
            if best is None:
                best = xh - 1 if upward else xh + 1
            return Point((xh + best) / 2, y0)
        raise AssertionError(f"face {f} has only horizontal edges")


def build_arrangement(system: CurveSystem) -> Arrangement:
    """Validate ``system`` and build its planar subdivision."""
    return Arrangement(system)


def face_of_point(arr: Arrangement, p) -> int:
    """Id of the face whose interior contains ``p``."""
    p = Point(Fraction(p[0]), Fraction(p[1]))
    for k in range(len(arr.arcs)):
        a, b = arr.arc_segment(k)
        if on_segment(p, a, b):
            raise OnCurveError(f"({p.x}, {p.y}) lies on the curve")
    for f in range(1, len(arr.faces)):
        if arr.contains(f, p):
            return f
    return arr.outer_face
