from fractions import Fraction

import pytest

from jplus.arrangement import GenericityError, build_arrangement, face_of_point, validate_generic
from jplus.curves import CurveSystem, Immersion
from jplus.generators import example1, std_k
from jplus.geom import OnCurveError, Point
from jplus.invariants import winding_numbers


def test_figure_eight_is_generic():
    assert validate_generic(CurveSystem(std_k(0))) == []


def test_touching_pair_is_rejected():
    a = Immersion("A", [(0, 0), (2, 0), (2, 2), (0, 2)])
    b = Immersion("B", [(2, 2), (4, 2), (4, 4), (2, 4)])
    kinds = {v.kind for v in validate_generic(CurveSystem([a, b]))}
    assert kinds == {"tangential contact"}
    with pytest.raises(GenericityError):
        build_arrangement(CurveSystem([a, b]))


def test_vertex_on_other_curve_is_rejected():
    a = Immersion("A", [(0, 0), (4, 0), (4, 4), (0, 4)])
    b = Immersion("B", [(2, 0), (3, -2), (1, -2)])
    assert {v.kind for v in validate_generic(CurveSystem([a, b]))} == {"tangential contact"}


def test_overlap_is_rejected():
    a = Immersion("A", [(0, 0), (4, 0), (4, 4), (0, 4)])
    b = Immersion("B", [(1, 0), (3, 0), (2, -2)])
    assert "collinear overlap" in {v.kind for v in validate_generic(CurveSystem([a, b]))}


def test_three_concurrent_edges_are_rejected():
    a = Immersion("A", [(-2, -2), (2, 2), (2, -2), (-2, 2)])
    b = Immersion("B", [(-3, 0), (3, 0), (3, 5)])
    violations = validate_generic(CurveSystem([a, b]))
    assert [v.kind for v in violations] == ["triple point"]
    assert violations[0].location == Point(0, 0)


@pytest.mark.parametrize("system, n, faces", [
    (CurveSystem(std_k(1)), 0, 2),
    (CurveSystem(std_k(0)), 1, 3),
    (CurveSystem(example1()), 3, 5),
])
def test_counts(system, n, faces):
    arr = build_arrangement(system)
    assert arr.n == n
    assert len(arr.faces) == faces


def test_face_of_point():
    k1 = build_arrangement(CurveSystem(std_k(1)))
    assert face_of_point(k1, (100, -100)) == k1.outer_face
    centroid = (Fraction(2), Fraction(3))
    assert face_of_point(k1, centroid) != k1.outer_face
    k0 = build_arrangement(CurveSystem(std_k(0)))
    loop = face_of_point(k0, (Fraction(3, 2), 0))
    assert loop != k0.outer_face
    assert winding_numbers(k0)[loop] == -1
    with pytest.raises(OnCurveError):
        face_of_point(k1, (0, 3))


@pytest.mark.parametrize("i", range(2, 9))
def test_crossing_count_of_standard_curves(i):
    assert build_arrangement(CurveSystem(std_k(i))).n == i - 1


def test_euler_relation_on_corpus(systems):
    for name, system in systems.items():
        assert build_arrangement(system).euler_characteristic_ok(), name


def test_crossings_have_four_quadrants_with_unit_steps(systems):
    for name, system in systems.items():
        arr = build_arrangement(system)
        w = winding_numbers(arr)
        for c in arr.crossings:
            q = [w[f] for f in c.quadrants]
            assert len(q) == 4
            assert all(abs(q[k] - q[(k + 1) % 4]) == 1 for k in range(4)), name
            assert q[0] == q[2] or q[1] == q[3], name


def test_build_is_deterministic(systems):
    for system in list(systems.values())[:12]:
        a, b = build_arrangement(system), build_arrangement(system)
        assert [c.position for c in a.crossings] == [c.position for c in b.crossings]
        assert [c.quadrants for c in a.crossings] == [c.quadrants for c in b.crossings]
        assert [(x.tail, x.head, x.left, x.right) for x in a.arcs] == \
               [(x.tail, x.head, x.left, x.right) for x in b.arcs]
        assert a.sample_points == b.sample_points


def test_sample_points_lie_in_their_faces(systems):
    for name, system in systems.items():
        arr = build_arrangement(system)
        for f, p in enumerate(arr.sample_points):
            assert face_of_point(arr, p) == f, name
