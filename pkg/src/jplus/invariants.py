"""Winding numbers, crossing indices, the encircling index and J+ / J2+."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .arrangement import Arrangement, build_arrangement
from .curves import CurveSystem
from .geom import winding_number


class WindingInconsistency(AssertionError):
    """Two propagation paths disagree: the arrangement itself is broken."""


@dataclass(frozen=True)
class WindingTable:
    system: tuple[int, ...]                  # per face
    per_component: tuple[tuple[int, ...], ...]

    def __getitem__(self, face: int) -> int:
        return self.system[face]

    def __len__(self) -> int:
        return len(self.system)


def winding_numbers(arr: Arrangement) -> WindingTable:
    """Propagate windings from the outer face; crossing an arc from its
    right to its left adds one for the arc's curve."""
    ncomp = len(arr.source)
    adjacency = [[] for _ in arr.faces]
    for arc in arr.arcs:
        adjacency[arc.right].append((arc.left, arc.component, 1))
        adjacency[arc.left].append((arc.right, arc.component, -1))
    table = [None] * len(arr.faces)
    table[arr.outer_face] = (0,) * ncomp
    queue = deque([arr.outer_face])
    while queue:
        f = queue.popleft()
        for g, comp, step in adjacency[f]:
            if table[g] is None:
                w = list(table[f])
                w[comp] += step
                table[g] = tuple(w)
                queue.append(g)
    for arc in arr.arcs:
        left, right = table[arc.left], table[arc.right]
        expect = list(right)
        expect[arc.component] += 1
        if tuple(expect) != left:
            raise WindingInconsistency(f"arc {arc.id}: faces {arc.right}->{arc.left} "
                                       f"windings {right}->{left}")
    per_component = tuple(tuple(w[c] for w in table) for c in range(ncomp))
    return WindingTable(tuple(sum(w) for w in table), per_component)


def winding_oracle(system: CurveSystem, p, components=None) -> int:
    """Winding of the selected curves around ``p`` by direct ray casting."""
    return winding_number(p, system.segments(components))


def crossing_indices(arr: Arrangement, w: WindingTable) -> list[int]:
    """Mean of the four quadrant windings at every crossing (quadrant multiplicity)."""
    out = []
    for c in arr.crossings:
        total = sum(w[f] for f in c.quadrants)
        if total % 4:
            raise WindingInconsistency(f"crossing {c.id}: quadrant windings sum to {total}")
        out.append(total // 4)
    return out


def _inter_crossings(arr: Arrangement) -> int:
    return sum(1 for c in arr.crossings if not c.is_self)


def encircling_index(system: CurveSystem, arr: Arrangement | None = None):
    """Return ``(u, (u_S1, u_S2))`` for a two-curve system.

    u_Si is the winding of the other curve around the first vertex of Si;
    both are reported as 0 when the curves intersect.
    """
    if len(system) != 2:
        raise ValueError("the encircling index needs a two-curve system")
    arr = arr or build_arrangement(system)
    if _inter_crossings(arr):
        return 0, (0, 0)
    u1 = winding_oracle(system, system[0].vertices[0], [1])
    u2 = winding_oracle(system, system[1].vertices[0], [0])
    return max(abs(u1), abs(u2)), (u1, u2)


@dataclass(frozen=True)
class InvariantReport:
    n: int
    windings: WindingTable
    indices: tuple[int, ...]
    u: int | None = None
    u_components: tuple[int, int] | None = None
    j_plus: int | None = None
    j2_plus: int | None = None

    @property
    def value(self) -> int:
        return self.j_plus if self.j2_plus is None else self.j2_plus


def analyze(system: CurveSystem, arr: Arrangement | None = None) -> InvariantReport:
    """Every invariant of ``system``: J+ for one curve, J2+ for a pair."""
    arr = arr or build_arrangement(system)
    w = winding_numbers(arr)
    ind = crossing_indices(arr, w)
    base = arr.n - sum(x * x for x in w.system) + sum(i * i for i in ind)
    if len(system) == 1:
        return InvariantReport(arr.n, w, tuple(ind), j_plus=1 + base)
    u, parts = encircling_index(system, arr)
    return InvariantReport(arr.n, w, tuple(ind), u, parts, j2_plus=2 + base + u * u)


def j_plus(system) -> int:
    """Arnold's J+ of a single curve through Viro's formula."""
    system = _as_system(system)
    if len(system) != 1:
        raise ValueError("J+ is defined here for single-curve systems")
    return analyze(system).j_plus


def j2_plus(system: CurveSystem) -> int:
    """J2+ of a two-curve system."""
    if len(system) != 2:
        raise ValueError("J2+ needs a two-curve system")
    return analyze(system).j2_plus


def _as_system(obj) -> CurveSystem:
    return obj if isinstance(obj, CurveSystem) else CurveSystem(obj)


def rotation_number(curve) -> int:
    """Whitney rotation number: signed turns of the edge direction.

    Counted exactly as the signed passes of the edge direction through the
    +x direction while turning by less than a half turn at each vertex.
    """
    v = curve.vertices
    n = len(v)
    dirs = [(v[(i + 1) % n].x - v[i].x, v[(i + 1) % n].y - v[i].y) for i in range(n)]
    total = 0
    for i in range(n):
        a, b = dirs[i], dirs[(i + 1) % n]
        turn = a[0] * b[1] - a[1] * b[0]
        if turn > 0 and _passes_east(a, b):
            total += 1
        elif turn < 0 and _passes_east(b, a):
            total -= 1
    return total


def _passes_east(a, b) -> bool:
    # counterclockwise sweep from a to b (less than half a turn) meets or
    # passes +x, counting a start exactly on +x as not passing
    if a[1] < 0 or (a[1] == 0 and a[0] < 0):
        return b[1] > 0 or (b[1] == 0 and b[0] > 0)
    return False
