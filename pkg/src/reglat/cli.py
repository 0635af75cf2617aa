"""Command-line front end.

Exit status: 0 when every asserted property holds, 1 on a property
violation, 2 on bad input (malformed files, unknown entries, dimensions
out of range).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .audit import audit2d
from .catalog import build, check_exclusion, classify, entry, parse_label, table, verify_entry
from .duality import star_dual, vee_dual
from .errors import ReglatError
from .polytope import (
    LatticePolytope,
    edge_point_counts,
    flag_count,
    is_centered,
    is_primitive,
    lattice_point_count,
    normalize,
)
from .rootsys import extract_roots
from .symmetry import isom_group, regularity_report


class InputError(Exception):
    """Bad command-line input (exit status 2)."""


def _load(path: str) -> LatticePolytope:
    try:
        data = json.loads(Path(path).read_text())
        return LatticePolytope.from_dict(data)
    except (OSError, ValueError, KeyError, TypeError, ReglatError) as exc:
        raise InputError(f"cannot read polytope from {path}: {exc}") from exc


def _save(P: LatticePolytope, path: str | None) -> None:
    text = json.dumps(P.to_dict(), indent=1)
    if path is None or path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")


def _entry(name: str, dim: int | None):
    try:
        if "^" in name:
            return entry(*parse_label(name))
        if dim is None:
            raise InputError("--dim is required unless the entry name carries it (e.g. S2^3)")
        return entry(name, dim)
    except ReglatError as exc:
        raise InputError(str(exc)) from exc


def _table_rows(n: int) -> list[dict]:
    try:
        return [e.to_row() for e in table(n)]
    except ReglatError as exc:
        raise InputError(str(exc)) from exc


def cmd_table(args) -> tuple[list, bool]:
    rows = _table_rows(args.dim)
    if not args.json:
        cols = ["name", "type", "isom_order", "lattice", "s0", "card", "edges", "facet",
                "vee_dual", "star_dual"]
        print("\t".join(cols))
        for r in rows:
            print("\t".join(str(r[c]) for c in cols))
    return rows, True


def cmd_build(args) -> tuple[list, bool]:
    e = _entry(args.entry, args.dim)
    P = build(e)
    _save(P, args.output)
    return [{"entry": e.name, "vertices": P.n_vertices, "output": args.output}], True


def _check(P: LatticePolytope) -> dict:
    Q, _ = normalize(P)
    rep = regularity_report(Q)
    out = {
        "dim": P.dim,
        "vertices": P.n_vertices,
        "facets": len(P.facets),
        "centered": is_centered(P),
        "primitive": is_primitive(P),
        "regular": rep.regular,
        "card": lattice_point_count(P),
        "edge_points": {str(k): v for k, v in sorted(edge_point_counts(P).items())},
        "flags": flag_count(P),
    }
    if not rep.regular:
        out["failing_flags"] = rep.to_dict()
    try:
        out["root_system"] = extract_roots(Q).label
    except ReglatError as exc:
        out["root_system"] = None
        out["root_system_error"] = str(exc)
    out["isom_order"] = isom_group(Q).order
    return out


def cmd_check(args) -> tuple[list, bool]:
    P = _load(args.file)
    res = _check(P)
    if not args.json:
        for k, v in res.items():
            print(f"{k}: {str(v).lower() if isinstance(v, bool) else v}")
    return [res], True


def cmd_classify(args) -> tuple[list, bool]:
    P = _load(args.file)
    r = classify(P).to_dict()
    if not args.json:
        print(f"status: {r['status']}")
        if r["entry"]:
            print(f"entry: {r['entry']}")
        if r["diagnostic"]:
            print(f"diagnostic: {r['diagnostic']}")
    return [r], True


def cmd_dual(args) -> tuple[list, bool]:
    P = _load(args.file)
    try:
        D = star_dual(P) if args.star else vee_dual(P)
    except ReglatError as exc:
        raise InputError(str(exc)) from exc
    _save(D, args.output)
    return [{"kind": "star" if args.star else "vee", "vertices": D.n_vertices}], True


def cmd_verify_table(args) -> tuple[list, bool]:
    try:
        entries = table(args.dim)
    except ReglatError as exc:
        raise InputError(str(exc)) from exc
    reports = [verify_entry(e, duals=not args.no_duals) for e in entries]
    if not args.json:
        for r in reports:
            bad = [c.column for c in r.checks if not c.ok]
            print(f"{r.entry.name}\t{'pass' if r.ok else 'FAIL'}\t{','.join(bad)}")
    return [r.to_dict() for r in reports], all(r.ok for r in reports)


def cmd_audit2d(args) -> tuple[list, bool]:
    try:
        rep = audit2d(args.bound)
    except ReglatError as exc:
        raise InputError(str(exc)) from exc
    d = rep.to_dict()
    if not args.json:
        print(f"candidates: {d['candidates']}  regular: {d['regular']}")
        for k, v in d["per_class"].items():
            print(f"{k}\t{v}")
        print(f"unexpected: {len(d['unexpected'])}")
    return [d], rep.ok


def cmd_exclusion(args) -> tuple[list, bool]:
    try:
        rep = check_exclusion(args.type, args.n, allow_large=args.allow_large)
    except ReglatError as exc:
        raise InputError(str(exc)) from exc
    d = rep.to_dict()
    if not args.json:
        for lat, reg in d["regular"].items():
            print(f"{d['kind']} over {lat}: regular: {str(reg).lower()}")
        print(f"facet vertex counts: {d['facet_vertex_counts']}")
    # the check passes when no candidate is regular, except for the
    # four-dimensional demicube, which is a cocube
    expected_regular = d["kind"] == "demicube" and d["n"] == 4
    return [d], rep.any_regular == expected_regular


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reglat",
        description="Construct, check, dualize and classify regular lattice polytopes.",
    )
    parser.add_argument("--json", action="store_true", help="print the JSON report on stdout")
    parser.add_argument("--report", help="also write the JSON report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="list the classes in a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("build", help="write the model polytope of an entry")
    p.add_argument("--entry", required=True, help="entry key (C2, S3, ...) or label (C2^3)")
    p.add_argument("--dim", type=int)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="regularity, root system and counts of a polytope file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="identify a polytope file with a catalog class")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dual", help="write the *-dual or the vee-dual of a polytope file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--star", action="store_true")
    g.add_argument("--vee", action="store_true")
    p.add_argument("file")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("verify-table", help="verify every entry of a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--no-duals", action="store_true", help="skip the dual columns")
    p.set_defaults(func=cmd_verify_table)

    p = sub.add_parser("audit2d", help="exhaustive search for regular polygons in a box")
    p.add_argument("--bound", type=int, default=2)
    p.set_defaults(func=cmd_audit2d)

    p = sub.add_parser("exclusion", help="negative checks: demicube or E-type root hulls")
    p.add_argument("--type", required=True, choices=["demicube", "e6", "e7", "e8"])
    p.add_argument("--n", type=int, help="dimension of the demicube")
    p.add_argument("--allow-large", action="store_true", help="permit the E7 and E8 checks")
    p.set_defaults(func=cmd_exclusion)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "json", "report")}
    try:
        results, ok = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, "inputs": inputs, "results": results, "pass": ok}
    text = json.dumps(report, indent=1, default=str)
    if args.json:
        print(text)
    if args.report:
        Path(args.report).write_text(text + "\n")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
