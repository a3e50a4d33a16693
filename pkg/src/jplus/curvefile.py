"""JSON curve files, move scripts and analysis reports.

Coordinates are stored as strings ("3/2", "-4") so files round-trip exactly.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .arrangement import Arrangement, build_arrangement, validate_generic
from .curves import CurveError, CurveSystem, Immersion
from .geom import Point, scalar, signed_area2
from .invariants import InvariantReport, analyze, rotation_number

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed curve file or move script."""


def fmt(value: Fraction) -> str:
    return str(value)


def point_json(p: Point) -> list[str]:
    return [fmt(p.x), fmt(p.y)]


def system_to_dict(system: CurveSystem, metadata: dict | None = None) -> dict:
    doc = {"format": FORMAT_VERSION,
           "curves": [{"id": c.id, "vertices": [point_json(p) for p in c.vertices]}
                      for c in system]}
    if metadata:
        doc["metadata"] = metadata
    return doc


def _coordinate(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"coordinate {value!r} must be an integer or a \"p/q\" string")
    try:
        return scalar(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse coordinate {value!r}") from None


def system_from_dict(doc) -> tuple[CurveSystem, dict]:
    if not isinstance(doc, dict):
        raise ParseError("a curve file holds a JSON object")
    if doc.get("format") != FORMAT_VERSION:
        raise ParseError(f"unsupported format {doc.get('format')!r}")
    curves = doc.get("curves")
    if not isinstance(curves, list) or not 1 <= len(curves) <= 2:
        raise ParseError("a curve file holds one or two curves")
    components = []
    for entry in curves:
        if not isinstance(entry, dict) or "id" not in entry or "vertices" not in entry:
            raise ParseError("each curve needs an id and vertices")
        verts = []
        for v in entry["vertices"]:
            if not isinstance(v, list) or len(v) != 2:
                raise ParseError(f"vertex {v!r} is not a coordinate pair")
            verts.append(Point(_coordinate(v[0]), _coordinate(v[1])))
        try:
            components.append(Immersion(str(entry["id"]), verts, check=False))
        except CurveError as exc:
            raise ParseError(str(exc)) from None
    try:
        system = CurveSystem(components)
    except (CurveError, ValueError) as exc:
        raise ParseError(str(exc)) from None
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise ParseError("metadata must be an object")
    return system, metadata


def loads_curves(text: str) -> tuple[CurveSystem, dict]:
    if not text.strip():
        raise ParseError("empty curve file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return system_from_dict(doc)


def dumps_curves(system: CurveSystem, metadata: dict | None = None) -> str:
    return json.dumps(system_to_dict(system, metadata), indent=2) + "\n"


def read_curves(path) -> tuple[CurveSystem, dict]:
    return loads_curves(Path(path).read_text())


def write_curves(path, system: CurveSystem, metadata: dict | None = None) -> None:
    Path(path).write_text(dumps_curves(system, metadata))


def read_script(path) -> list[dict]:
    """A move script: ``{"format": 1, "moves": [request, ...]}`` or a bare list."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    moves = doc.get("moves") if isinstance(doc, dict) else doc
    if not isinstance(moves, list) or not all(isinstance(m, dict) and "op" in m for m in moves):
        raise ParseError("a move script is a list of requests with an 'op' field")
    return moves


# -- reports -----------------------------------------------------------

def face_area(arr: Arrangement, f: int) -> Fraction | None:
    face = arr.faces[f]
    if face.is_outer:
        return None

    def area(cycle):
        return signed_area2([arr.node_pos[arr.he_origin[h]] for h in cycle]) / 2

    return area(face.cycle) + sum(area(h) for h in face.holes)


def report(system: CurveSystem, arr: Arrangement | None = None,
           result: InvariantReport | None = None) -> dict:
    """Deterministic description of a generic system and its invariants."""
    arr = arr or build_arrangement(system)
    result = result or analyze(system, arr)
    w = result.windings
    faces = []
    for f, face in enumerate(arr.faces):
        area = face_area(arr, f)
        faces.append({"id": f, "winding": w[f],
                      "component_windings": [w.per_component[c][f] for c in range(len(system))],
                      "area": None if area is None else fmt(area), "parent": face.parent})
    crossings = [{"id": c.id, "position": point_json(c.position), "index": result.indices[c.id],
                  "strands": [system[b.component].id for b in c.branches]}
                 for c in arr.crossings]
    curves = [{"id": c.id, "rotation": rotation_number(c),
               "edges": [[j, point_json(a), point_json(b)] for j, (a, b) in enumerate(c.edges())]}
              for c in system]
    out = {"valid": True, "components": len(system), "n": result.n, "curves": curves,
           "faces": faces, "crossings": crossings}
    if result.j2_plus is None:
        out["j_plus"] = result.j_plus
    else:
        out["u"] = result.u
        out["u_components"] = list(result.u_components)
        out["j2_plus"] = result.j2_plus
    return out


def violation_report(system: CurveSystem) -> dict:
    return {"valid": False, "violations": [
        {"kind": v.kind, "location": None if v.location is None else point_json(v.location),
         "detail": v.detail} for v in validate_generic(system)]}


def expected_mismatches(rep: dict, expected: dict) -> list[str]:
    """Compare a report against a fixture's ``expected`` block."""
    out = []
    for key, want in sorted(expected.items()):
        if key == "windings":
            got = sorted(f["winding"] for f in rep["faces"])
            want = sorted(want)
        elif key == "indices":
            got = sorted(c["index"] for c in rep["crossings"])
            want = sorted(want)
        else:
            got = rep.get(key)
        if got != want:
            out.append(f"{key}: expected {want}, got {got}")
    return out
