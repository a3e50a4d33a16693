import pytest

from jplus.curves import CurveError, CurveSystem, Immersion
from jplus.generators import std_k


def test_needs_three_vertices():
    with pytest.raises(CurveError, match="at least 3"):
        Immersion("S", [(0, 0), (1, 0)])


def test_repeated_vertex_rejected():
    with pytest.raises(CurveError, match="repeated"):
        Immersion("S", [(0, 0), (1, 0), (1, 0), (0, 1)])


def test_fold_back_rejected():
    with pytest.raises(CurveError, match="fold back"):
        Immersion("S", [(0, 0), (2, 0), (1, 0), (0, 1)])


def test_vertex_on_other_edge_rejected():
    with pytest.raises(CurveError, match="touches"):
        Immersion("S", [(0, 0), (4, 0), (4, 4), (2, 0), (0, 4)])


def test_collinear_straight_vertex_allowed():
    c = Immersion("S", [(0, 0), (1, 0), (2, 0), (2, 2)])
    assert len(c) == 4


def test_coordinates_are_exact():
    c = Immersion("S", [("1/3", 0), (1, "2/4"), (0, 1)])
    assert c.vertices[0].x.denominator == 3
    assert c.vertices[1].y.denominator == 2


def test_reversal_keeps_start_and_flips_area():
    c = std_k(1)
    r = c.reversed()
    assert r.vertices[0] == c.vertices[0]
    assert r.signed_area2() == -c.signed_area2()
    assert r.reversed() == c


def test_system_size_and_ids():
    a = std_k(1, "A")
    with pytest.raises(CurveError):
        CurveSystem([a, a])
    with pytest.raises(CurveError):
        CurveSystem([a, a.relabeled("B"), a.relabeled("C")])
    pair = CurveSystem.pair(a, a.translated(10, 0))
    assert [c.id for c in pair] == ["S1", "S2"]
    assert pair.index_of("S2") == 1
