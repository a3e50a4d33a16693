"""Regenerate the curve fixtures in ../fixtures.

Each fixture embeds the invariants it is expected to produce; move
scripts carry the invariant value expected after every step.
"""
from __future__ import annotations

import json
from fractions import Fraction as F
from pathlib import Path

from jplus.curvefile import dumps_curves, report
from jplus.curves import CurveSystem
from jplus.generators import (PairTarget, construct_pair, construct_start_pair, disjoint_pair,
                              example1, example2, std_k, std_l, std_p)
from jplus.moves import apply_move

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def expected(system: CurveSystem, keys=("n", "j_plus", "j2_plus", "u")) -> dict:
    rep = report(system)
    out = {k: rep[k] for k in keys if k in rep}
    out["windings"] = sorted(f["winding"] for f in rep["faces"])
    out["indices"] = sorted(c["index"] for c in rep["crossings"])
    return out


def write(name: str, system: CurveSystem, label: str) -> None:
    meta = {"label": label, "expected": expected(system)}
    (OUT / f"{name}.curves").write_text(dumps_curves(system, meta))


def write_sequence(name: str, start: CurveSystem, moves: list[dict], label: str) -> None:
    system = start
    values = [report(system).get("j2_plus", report(system).get("j_plus"))]
    for request in moves:
        result = apply_move(system, request)
        if result.problems():
            raise SystemExit(f"{name}: {result.problems()}")
        system = result.system
        values.append(result.after.value)
    write(f"{name}_start", start, f"{label}: start")
    write(f"{name}_end", system, f"{label}: end")
    doc = {"format": 1, "label": label, "moves": moves, "expected_values": values}
    (OUT / f"{name}.moves").write_text(json.dumps(doc, indent=2) + "\n")


def main() -> None:
    OUT.mkdir(exist_ok=True)
    write("example1", CurveSystem(example1()), "three-crossing chain, all indices 0")
    write("example2", CurveSystem(example2()), "four crossings, all indices 1")
    for i in (0, 1, 2, 3):
        write(f"k{i}", CurveSystem(std_k(i)), f"standard curve K{i}")
    write("p2", CurveSystem(std_p(2)), "standard curve P2")
    for i in (1, 2, 3):
        write(f"l{i}", CurveSystem(std_l(i)), f"spiral L{i}")

    write_sequence("example3", disjoint_pair(std_k(1), std_k(2), 2), [
        {"op": "finger", "curve": "S1", "edge": 1, "route": [[4, 5], ["13/2", 5]]},
        {"op": "retract", "crossings": [[6, "9/2"], [6, "11/2"]], "inside": [2, 3]},
    ], "K1 beside K2, pushed inside across an inverse then a direct tangency")

    write_sequence("example4", disjoint_pair(std_k(0), std_k(0), 2).reversed(), [
        {"op": "finger", "curve": "S2", "edge": 0, "route": [[4, 0], ["3/2", 0]]},
        {"op": "triple", "curve": "S2", "edge": 1, "crossing": [0, 0]},
        {"op": "retract", "crossings": [["-1/8", "-1/16"], ["-1/8", "1/16"]],
         "inside": ["-7/4", "-3/4"]},
    ], "two equally oriented K0, one ending inside the other")

    for name, flip, label in (("example5", True, "L0 and L2 oppositely oriented, merged"),
                              ("example6", False, "L0 and L2 equally oriented, merged")):
        small = std_l(0, "S1").transformed(F(1, 3), -4, 4)
        if flip:
            small = small.reversed()
        edge = next(j for j, (a, b) in enumerate(small.edges()) if a.x == b.x == -2)
        moves = [{"op": "finger", "curve": "S1", "edge": edge, "route": [[-2, 5], [5, 5]]}]
        moves += [{"op": "retract", "crossings": [[x, "9/2"], [x, "11/2"]], "inside": [p, 5]}
                  for x, p in ((0, -3), (1, "1/2"), (2, "3/2"))]
        write_sequence(name, CurveSystem.pair(small, std_l(2, "S2")), moves, label)

    target = PairTarget(-6, -4, -16)
    write("theorem_b_start", construct_start_pair(target), "disjoint start pair for (-6, -4, -16)")
    write("theorem_b", construct_pair(target), "constructed pair for (-6, -4, -16)")


if __name__ == "__main__":
    main()
