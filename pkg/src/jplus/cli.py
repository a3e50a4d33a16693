"""Command-line front end: ``jplus analyze | generate | construct | perturb | render``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arrangement import GenericityError, build_arrangement, validate_generic
from .curvefile import (ParseError, dumps_curves, expected_mismatches, read_curves, read_script,
                        report, violation_report, write_curves)
from .curves import CurveSystem
from .generators import ConstructionError, PairTarget, construct_pair, family, family_j_plus
from .invariants import analyze
from .moves import MoveError, apply_move
from .render import render_svg

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_GENERICITY = 4
EXIT_CONTRACT = 5


class CommandFailed(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _load(path) -> tuple[CurveSystem, dict]:
    try:
        system, metadata = read_curves(path)
    except OSError as exc:
        raise CommandFailed(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise CommandFailed(EXIT_PARSE, f"{path}: {exc}") from None
    if validate_generic(system):
        raise CommandFailed(EXIT_GENERICITY, f"{path}: curve system is not generic",
                            violation_report(system))
    return system, metadata


def _write(path, text: str) -> None:
    Path(path).write_text(text)


def cmd_analyze(args) -> dict:
    system, metadata = _load(args.file)
    arr = build_arrangement(system)
    result = analyze(system, arr)
    rep = report(system, arr, result)
    if args.json:
        _write(args.json, _dump(rep))
    if args.svg:
        _write(args.svg, render_svg(system, arr, result))
    expected = metadata.get("expected")
    if expected:
        problems = expected_mismatches(rep, expected)
        if problems:
            raise CommandFailed(EXIT_CONTRACT, "fixture expectations not met: " + "; ".join(problems),
                                rep)
    return rep


def cmd_generate(args) -> dict:
    try:
        curve = family(args.family, args.n)
    except ValueError as exc:
        raise CommandFailed(EXIT_CONTRACT, str(exc)) from None
    system = CurveSystem(curve)
    want = family_j_plus(args.family, args.n)
    metadata = {"family": args.family.lower(), "parameter": args.n, "expected": {"j_plus": want}}
    rep = report(system)
    if args.verify and rep["j_plus"] != want:
        raise CommandFailed(EXIT_CONTRACT, f"J+ is {rep['j_plus']}, closed form gives {want}", rep)
    write_curves(args.out, system, metadata)
    return rep


def cmd_construct(args) -> dict:
    try:
        target = PairTarget(args.x, args.y, args.z)
    except ValueError as exc:
        raise CommandFailed(EXIT_CONTRACT, f"{exc} (all three values must be even)") from None
    try:
        system = construct_pair(target)
    except ConstructionError as exc:
        raise CommandFailed(EXIT_CONTRACT, str(exc)) from None
    rep = report(system)
    rep["target"] = {"x": args.x, "y": args.y, "z": args.z}
    rep["j_plus_components"] = [analyze(CurveSystem(c)).j_plus for c in system]
    write_curves(args.out, system, {"expected": {"j2_plus": args.z}, "target": rep["target"]})
    return rep


def cmd_perturb(args) -> dict:
    system, _ = _load(args.file)
    try:
        moves = read_script(args.script)
    except OSError as exc:
        raise CommandFailed(EXIT_PARSE, f"cannot read {args.script}: {exc.strerror}") from None
    except ParseError as exc:
        raise CommandFailed(EXIT_PARSE, f"{args.script}: {exc}") from None
    runs = []
    for i, request in enumerate(moves):
        try:
            result = apply_move(system, request)
        except (MoveError, KeyError, TypeError, ValueError, GenericityError) as exc:
            raise CommandFailed(EXIT_CONTRACT, f"move {i} rejected: {exc}",
                                {"moves": runs}) from None
        runs.append(result.as_dict())
        if args.assert_deltas:
            problems = result.problems()
            if problems:
                raise CommandFailed(EXIT_CONTRACT, f"move {i}: " + "; ".join(problems),
                                    {"moves": runs})
        system = result.system
    out = {"moves": runs, "final": report(system)}
    if args.out:
        write_curves(args.out, system)
    return out


def cmd_render(args) -> dict:
    system, _ = _load(args.file)
    _write(args.out, render_svg(system))
    return {"svg": str(args.out)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jplus", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="validate a curve file and compute its invariants")
    p.add_argument("file")
    p.add_argument("--json", help="also write the report to this file")
    p.add_argument("--svg", help="also write a rendering to this file")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("generate", help="write a standard family curve")
    p.add_argument("family", choices=["k", "p", "l", "K", "P", "L"])
    p.add_argument("n", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--verify", action="store_true", help="check J+ against the closed form")
    p.set_defaults(run=cmd_generate)

    p = sub.add_parser("construct", help="build a pair with prescribed J+(S1), J+(S2), J2+")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(run=cmd_construct)

    p = sub.add_parser("perturb", help="apply a script of local moves")
    p.add_argument("file")
    p.add_argument("--script", required=True)
    p.add_argument("--assert-deltas", action="store_true",
                   help="fail unless every measured change matches its prediction")
    p.add_argument("--out", help="write the final curve system here")
    p.set_defaults(run=cmd_perturb)

    p = sub.add_parser("render", help="draw a curve file as SVG")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(run=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.run(args)
    except CommandFailed as exc:
        if exc.payload is not None:
            sys.stdout.write(_dump(exc.payload))
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(_dump(doc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
