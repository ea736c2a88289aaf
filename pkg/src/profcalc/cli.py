"""Command-line front end. Every run writes a JSON certificate (stdout by default).

Exit codes: 0 ok, 1 structural failure, 2 universal-property or axiom failure,
3 nonexistence, 4 I/O or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .certify import (EXIT_IO, SchemaError, certify, dumps_certificate, verify_certificate_data)


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="profcalc", description="Finite profunctor calculus with certificates.")
    p.add_argument("--arity", type=int, default=3, help="arity bound N for monoidal checks (default 3)")
    p.add_argument("--probe-size", type=int, default=2, help="probe element and object bound (default 2)")
    p.add_argument("--depth", type=int, default=4, help="zig-zag search depth (default 4)")
    p.add_argument("--certificate", metavar="PATH", help="write the certificate here instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check", help="validate an artifact file")
    c.add_argument("kind", choices=["category", "functor", "profunctor", "cell", "monoidal"])
    c.add_argument("file")
    c.add_argument("--exhaustive", action="store_true", help="check monoidal equations even on thin bases")

    c = sub.add_parser("compose", help="horizontal composite of two profunctors")
    c.add_argument("left")
    c.add_argument("right")

    c = sub.add_parser("kan", help="pointwise Kan extension with a checked certificate")
    c.add_argument("--direction", choices=["left", "right"], default="left")
    c.add_argument("--diagram", required=True, help="functor file d")
    c.add_argument("--along", required=True, help="profunctor file J")
    c.add_argument("--target", help="category file overriding the target of d")

    c = sub.add_parser("tabulate", help="tabulation of a profunctor")
    c.add_argument("profunctor")

    c = sub.add_parser("lift", help="monoidal structure on a left Kan extension between posets")
    c.add_argument("--diagram", required=True)
    c.add_argument("--along", required=True)
    c.add_argument("--mode", choices=["lax", "colax", "pseudo"], default="lax")
    for side in ("a", "b", "m"):
        c.add_argument(f"--{side}-tensor", choices=["join", "meet"], default="join")

    c = sub.add_parser("prop", help="PROP computations")
    psub = c.add_subparsers(dest="action", required=True)
    q = psub.add_parser("bc-factor")
    q.add_argument("--matrix", required=True, help='rows ";"-separated, entries ","-separated')
    q.add_argument("--split", required=True, help='block row counts, e.g. "1,2"')
    q.add_argument("--cols", type=int, help="column count (needed when the matrix has no rows)")
    q = psub.add_parser("bc-relate")
    q.add_argument("--blocks", required=True, help='alternative blocks separated by "|"')
    q.add_argument("--zeta", required=True)
    q.add_argument("--split", required=True)
    q.add_argument("--matrix", help="original matrix; recomputed from the representation if omitted")
    q.add_argument("--cols", type=int)
    q = psub.add_parser("hopf")
    q.add_argument("--group", required=True, help='"Z/2", "Z/2xZ/2", ... or a table JSON file')
    q = psub.add_parser("adjunction")
    q.add_argument("--group", required=True)
    q.add_argument("--basis", default="", help="comma-separated identifiers")
    q = psub.add_parser("coend")
    q.add_argument("--left", required=True)
    q.add_argument("--left-labels", required=True)
    q.add_argument("--right", required=True)
    q.add_argument("--right-labels", required=True)

    c = sub.add_parser("verify", help="recompute a certificate and compare")
    c.add_argument("file")
    return p


def _labels(s: str) -> list:
    return [v.strip() for v in s.split(",") if v.strip()]


def _group(s: str):
    return s if s.startswith("Z/") else _load(s)


def _request(args) -> tuple[str, dict, dict]:
    base = {"arity": args.arity, "probe_size": args.probe_size, "depth": args.depth}
    v = args.verb
    if v == "check":
        return "check", {"entity": _load(args.file)}, {**base, "kind": args.kind, "exhaustive": args.exhaustive}
    if v == "compose":
        return "compose", {"left": _load(args.left), "right": _load(args.right)}, base
    if v == "kan":
        inputs = {"diagram": _load(args.diagram), "along": _load(args.along)}
        if args.target:
            inputs["target"] = _load(args.target)
        return "kan", inputs, {**base, "direction": args.direction}
    if v == "tabulate":
        return "tabulate", {"profunctor": _load(args.profunctor)}, base
    if v == "lift":
        return "lift", {"diagram": _load(args.diagram), "along": _load(args.along)}, {
            **base, "mode": args.mode, "a_tensor": args.a_tensor, "b_tensor": args.b_tensor,
            "m_tensor": args.m_tensor}
    a = args.action
    params = {**base, "action": a}
    if a == "bc-factor":
        params.update(matrix=args.matrix, split=args.split, cols=args.cols)
    elif a == "bc-relate":
        params.update(blocks=args.blocks.split("|"), zeta=args.zeta, split=args.split, matrix=args.matrix,
                      cols=args.cols)
    elif a == "hopf":
        params.update(group=_group(args.group))
    elif a == "adjunction":
        params.update(group=_group(args.group), basis=_labels(args.basis))
    elif a == "coend":
        params.update(left=args.left, left_labels=_labels(args.left_labels), right=args.right,
                      right_labels=_labels(args.right_labels))
    return "prop", {}, params


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "verify":
            code, diff = verify_certificate_data(_load(args.file))
            report = {"verified": code == 0, "differences": diff}
            _emit(json.dumps(report, sort_keys=True, indent=2) + "\n", args.certificate)
            return code
        operation, inputs, params = _request(args)
        cert, code = certify(operation, inputs, params)
    except (OSError, json.JSONDecodeError, SchemaError, KeyError) as exc:
        sys.stderr.write(f"profcalc: {type(exc).__name__}: {exc}\n")
        return EXIT_IO
    _emit(dumps_certificate(cert), args.certificate)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
