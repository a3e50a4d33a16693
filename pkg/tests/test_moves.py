import random

import pytest

from conftest import fixture_path, load_fixture
from jplus.arrangement import build_arrangement
from jplus.curvefile import read_script
from jplus.curves import CurveSystem
from jplus.generators import construct_pair, disjoint_pair, std_k, std_l, std_p
from jplus.invariants import analyze
from jplus.moves import (DIRECT, INVERSE, TRIPLE, MoveError, MoveRecord, apply_move, bigons,
                         finger_push, random_walk, retract_pass, triangles, triple_pass,
                         triple_version)


def run(system, requests):
    results = []
    for request in requests:
        result = apply_move(system, request)
        assert result.problems() == [], request
        results.append(result)
        system = result.system
    return results


def summary(rep):
    return (rep.n, rep.value, rep.u, sorted(rep.windings.system), sorted(rep.indices))


def test_record_patterns():
    assert MoveRecord(DIRECT, "positive", "self-S1", (3, 1, 2, 2), 2).pattern_ok()
    assert not MoveRecord(DIRECT, "positive", "self-S1", (3, 1, 2, 3), 2).pattern_ok()
    assert MoveRecord(INVERSE, "positive", "self-S1", (3, 3, 2, 4), 0).pattern_ok()
    assert MoveRecord(INVERSE, "negative", "self-S1", (1, 1, 2, 0), 0).pattern_ok()
    assert not MoveRecord(INVERSE, "negative", "self-S1", (1, 3, 2, 0), 0).pattern_ok()
    assert MoveRecord(TRIPLE, None, "self-S1", (1,), 0, version=4).pattern_ok()


def test_triple_versions_cover_all_patterns():
    seen = {triple_version(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)}
    assert seen == {1, 2, 3, 4}


def test_example3_sequence():
    system = load_fixture("example3_start.curves")
    finger, retract = run(system, read_script(fixture_path("example3.moves")))
    assert [r.kind for r in finger.records] == [INVERSE]
    assert finger.records[0].scope == "between-S1-S2"
    assert finger.measured == 0
    rec = retract.records[0]
    assert (rec.kind, rec.sign, retract.measured) == (DIRECT, "negative", -2)
    assert (retract.before.u, retract.after.u) == (0, 1)
    assert [finger.before.value, finger.after.value, retract.after.value] == [-2, -2, -4]


def test_encircling_pair_opened_by_a_direct_pass():
    system = load_fixture("example3_end.curves")
    result = apply_move(system, {"op": "finger", "curve": "S2", "edge": 5,
                                 "route": [[6, 5], ["25/4", 5]]})
    assert result.problems() == []
    (rec,) = result.records
    assert (rec.kind, rec.sign, rec.u_case) == (DIRECT, "positive", 2)
    assert (result.before.u, result.after.u) == (1, 0)
    assert result.measured == 2


def test_example4_sequence():
    system = load_fixture("example4_start.curves")
    results = run(system, read_script(fixture_path("example4.moves")))
    kinds = [r.records[0].kind for r in results]
    assert kinds == [DIRECT, TRIPLE, DIRECT]
    assert [results[0].before.value] + [r.after.value for r in results] == [0, 2, 2, 0]
    assert results[1].records[0].version == 2


@pytest.mark.parametrize("name, want", [("example5", 0), ("example6", -12)])
def test_merging_spirals(name, want):
    system = load_fixture(f"{name}_start.curves")
    results = run(system, read_script(fixture_path(f"{name}.moves")))
    assert results[0].before.value == -6
    assert results[-1].after.value == want
    retracts = [r.records[0] for r in results[1:]]
    if want == -12:
        assert [(r.kind, r.sign) for r in retracts] == [(DIRECT, "negative")] * 3
    else:
        assert [(r.kind, r.sign) for r in retracts] == [(INVERSE, "negative")] * 3


def test_finger_then_retract_negates():
    system = CurveSystem(std_k(3))
    new, records = finger_push(system, ("S", 8), [[0, 1], [2, 1]])
    assert len(records) == 1
    old = {c.position for c in build_arrangement(system).crossings}
    arr = build_arrangement(new)
    fresh = [(pair, f) for pair, f in bigons(arr)
             if not {arr.crossings[c].position for c in pair} & old]
    (pair, face), = fresh
    back, rec = retract_pass(new, pair, arr.sample_point(face))
    assert rec.kind == records[0].kind
    assert rec.sign == "negative" and records[0].sign == "positive"
    assert rec.predicted_delta == -records[0].predicted_delta
    assert summary(analyze(back)) == summary(analyze(system))


def test_triple_twice_restores_the_report():
    system = load_fixture("example4_start.curves")
    requests = read_script(fixture_path("example4.moves"))
    system = apply_move(system, requests[0]).system
    first = apply_move(system, requests[1])
    assert first.problems() == []
    mid = first.system
    arr = build_arrangement(mid)
    target = tuple(map(str, requests[1]["crossing"]))
    for c, comp, edge in triangles(arr):
        pos = arr.crossings[c].position
        if (str(pos.x), str(pos.y)) == target and mid[comp].id == "S2":
            second = apply_move(mid, {"op": "triple", "curve": "S2", "edge": edge,
                                      "crossing": requests[1]["crossing"]})
            assert second.problems() == []
            assert summary(second.after) == summary(first.before)
            return
    pytest.fail("no triangle to sweep back")


def test_version_two_index_bookkeeping():
    seen = 0
    for seed in range(30):
        rng = random.Random(seed)
        start = CurveSystem(std_k(rng.randrange(2, 5))) if seed % 2 else \
            disjoint_pair(std_k(0), std_k(0), 2)
        for result in random_walk(start, 8, rng):
            if not result.records:
                continue
            rec = result.records[0]
            if rec.kind != TRIPLE or rec.version != 2:
                continue
            x = rec.local_windings[0]
            ind_sq = sum(i * i for i in result.after.indices) - \
                sum(i * i for i in result.before.indices)
            w_sq = sum(w * w for w in result.after.windings.system) - \
                sum(w * w for w in result.before.windings.system)
            assert w_sq == rec.new_winding ** 2 - x ** 2
            if rec.new_winding == x - 3:
                assert ind_sq == 3 * (x - 2) ** 2 - 3 * (x - 1) ** 2
            else:
                assert rec.new_winding == x + 3
                assert ind_sq == 3 * (x + 2) ** 2 - 3 * (x + 1) ** 2
            seen += 1
    assert seen


def test_rejections():
    system = CurveSystem(std_k(1))
    with pytest.raises(MoveError):
        retract_pass(system, [[0, 0], [4, 0]])
    with pytest.raises(MoveError):
        apply_move(system, {"op": "twist"})
    with pytest.raises(MoveError):
        apply_move(system, {"op": "finger", "curve": "nope", "edge": 0, "route": [[1, 0], [1, 1]]})
    # a route ending on the curve is not a transversal finger
    with pytest.raises(MoveError):
        finger_push(system, ("S", 0), [[2, 0], [2, 6]])
    k0 = CurveSystem(std_k(0))
    with pytest.raises(MoveError):
        triple_pass(k0, ("S", 0), 0)


@pytest.mark.parametrize("start", [
    CurveSystem(std_k(2)), CurveSystem(std_p(1)), CurveSystem(std_l(2)),
    disjoint_pair(std_k(1), std_k(2), 2), construct_pair((0, 0, 4)),
    construct_pair((0, 2, -4)),
], ids=["K2", "P1", "L2", "K1|K2", "pair(0,0,4)", "pair(0,2,-4)"])
def test_soak(start):
    for seed in range(3):
        for result in random_walk(start, 10, random.Random(seed)):
            assert result.problems() == []
            assert result.after.value % 2 == 0
