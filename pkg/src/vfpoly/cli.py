"""Command-line interface: ``vfpoly <command> ...``.

Exit codes: 0 pass, 1 verification mismatch or invalid polyhedron, 2 usage
error, 3 coset limit exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from . import enumerate as enum_mod
from . import families, operators, tables
from .fp import COSET_LIMIT_ENV, CosetLimitExceeded, Presentation, PresentationSyntaxError, Word
from .polyhedron import Polyhedron, PolyhedronError, from_generators, from_presentation

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def tool_version() -> str:
    return __version__


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_manifest(out: Path, argv: list[str], inputs: dict[str, bytes], started: float) -> Path:
    """Sidecar ``<out>.manifest.json`` describing how ``out`` was produced."""
    manifest = {
        "command": ["vfpoly", *argv],
        "tool_version": tool_version(),
        "input_hashes": {k: _sha256(v) for k, v in sorted(inputs.items())},
        "output": str(out),
        "output_sha256": _sha256(out.read_bytes()),
        "wall_time_s": round(time.perf_counter() - started, 3),
    }
    path = out.with_name(out.name + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


# --------------------------------------------------------------------------
# output helpers


def _emit_record(P: Polyhedron, fmt: str) -> None:
    rec = P.record()
    if P.name:
        rec = {"name": P.name, **rec}
    if fmt == "json":
        print(json.dumps(rec))
        return
    width = max(map(len, rec))
    for key, value in rec.items():
        if isinstance(value, list) and key == "type":
            value = "{%d,%d}" % tuple(value)
        elif isinstance(value, list):
            value = ", ".join(value)
        print(f"{key:<{width}}  {value}")


def _emit_report(rep: enum_mod.Report) -> int:
    print(rep)
    print(json.dumps({"suite": rep.name, "ok": rep.ok, "failures": rep.failures}))
    return EXIT_OK if rep.ok else EXIT_MISMATCH


# --------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    if args.gens and (args.p or args.q or args.rel):
        raise UsageError("--gens cannot be combined with --p/--q/--rel")
    if args.gens:
        P = from_generators(args.gens)
    elif args.p or args.q:
        try:
            rels = tuple(Word.parse(r) for r in args.rel)
        except PresentationSyntaxError as exc:
            raise UsageError(str(exc)) from exc
        P = from_presentation(Presentation(args.p, args.q, rels), args.coset_limit)
    else:
        raise UsageError("give --gens or --p/--q")
    _emit_record(P, args.format)
    return EXIT_OK


def cmd_enumerate(args, argv) -> int:
    started = time.perf_counter()
    v = args.vertices
    if not enum_mod.MIN_VERTICES <= v <= enum_mod.MAX_VERTICES:
        raise UsageError(f"--vertices must be in {enum_mod.MIN_VERTICES}..{enum_mod.MAX_VERTICES}")
    records = enum_mod.enumerate_vertex_faithful(v, args.jobs)
    if args.out is None:
        for r in records:
            print(r.to_json())
        return EXIT_OK
    out = Path(args.out)
    enum_mod.write_census(records, out)
    write_manifest(out, argv, {"vertices": str(v).encode()}, started)
    print(f"{len(records)} records written to {out}", file=sys.stderr)
    return EXIT_OK


def _verify_report(args) -> enum_mod.Report:
    suite = args.suite
    if suite == "table1":
        return tables.verify_tables(tables.TABLE1_VERTICES, "table1", args.jobs, args.coset_limit)
    if suite == "table2":
        return tables.verify_tables(tables.TABLE2_VERTICES, "table2", args.jobs, args.coset_limit)
    if suite in ("prime", "twice-prime", "b-squared"):
        if args.b is None:
            raise UsageError(f"verify {suite} needs --b")
        try:
            if suite == "prime":
                return enum_mod.classify_prime(args.b, args.q_cap, args.jobs)
            if suite == "twice-prime":
                return enum_mod.classify_twice_prime(args.b, args.jobs)
            return enum_mod.smallest_b_squared(args.b)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if suite == "flat-oracle":
        rep = enum_mod.Report(f"flat-oracle max={args.max}")
        cases, hits, bad = families.oracle_sweep(args.max, limit=args.coset_limit)
        rep.lines.append(f"     {cases} cases, {hits} flat polyhedra")
        for params in bad:
            rep.check(False, f"predicate and oracle disagree on {params}")
        rep.check(not bad, f"{len(bad)} disagreements")
        return rep
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args) -> int:
    return _emit_report(_verify_report(args))


def cmd_diff_census(args) -> int:
    path = Path(args.census)
    if not path.exists():
        raise UsageError(f"no such file: {path}")
    records = enum_mod.read_census(path)
    vertices = args.vertices or sorted({r.v for r in records})
    if not vertices:
        raise UsageError("empty census: pass --vertices to say which rows to compare against")
    problems = tables.diff_census(records, vertices)
    for line in problems:
        print(line)
    print(json.dumps({"census": str(path), "vertices": vertices, "ok": not problems,
                      "mismatches": problems}))
    return EXIT_MISMATCH if problems else EXIT_OK


def cmd_family(args) -> int:
    kind = args.family
    if kind == "lambda":
        params = families.LambdaParams(args.p, args.q, args.i, args.j)
        verdict = families.flat_orientable_predicate(params)
        print(json.dumps({"params": [params.p, params.q, params.i, params.j],
                          "predicate": verdict.is_flat_polyhedron,
                          "witness": verdict.witness}))
        if verdict:
            _emit_record(from_presentation(families.lambda_presentation(params), args.coset_limit,
                                           name=f"Lambda({params.p},{params.q})_{{{params.i},{params.j}}}"),
                         args.format)
        return EXIT_OK
    if kind == "flat-catalog":
        for P in families.flat_family_catalog(args.v, args.q_cap, args.coset_limit):
            _emit_record(P, args.format)
        return EXIT_OK
    if kind == "torus":
        vec = (args.s, 0) if args.vector == "s0" else (args.s, args.s)
        _emit_record(families.toroidal_44(args.s, vec), args.format)
        return EXIT_OK
    if kind == "petrial-dual-torus":
        _emit_record(operators.petrial_dual_torus(args.s), args.format)
        return EXIT_OK
    if kind == "universal":
        row = {"p": args.p, "q": args.q, "order": args.order,
               "z1": args.z1, "h": args.h, "z2": args.z2}
        ok = families.table6_universal_check(row, args.coset_limit)
        print(json.dumps({**row, "universal": ok}))
        return EXIT_OK
    raise UsageError(f"unknown family {kind!r}")


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vfpoly", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    parser.add_argument("--coset-limit", type=int, default=None,
                        help=f"coset enumeration cap (default: ${COSET_LIMIT_ENV} or 200000)")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="invariants of one polyhedron")
    a.add_argument("--p", type=int, default=0)
    a.add_argument("--q", type=int, default=0)
    a.add_argument("--rel", action="append", default=[], help="extra relator, e.g. '(0121)^2 2'")
    a.add_argument("--gens", help="three 1-indexed permutations, e.g. '(1 2),(2 3),(3 4)'")
    a.add_argument("--format", choices=("json", "table"), default="json")

    e = sub.add_parser("enumerate", help="vertex-faithful census for one vertex count")
    e.add_argument("--vertices", type=int, required=True)
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--out", help="census path (JSON lines); a manifest is written beside it")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=("table1", "table2", "prime", "twice-prime", "b-squared",
                                     "flat-oracle"))
    v.add_argument("--b", type=int)
    v.add_argument("--q-cap", type=int)
    v.add_argument("--max", type=int, default=12)
    v.add_argument("--jobs", type=int, default=1)

    d = sub.add_parser("diff-census", help="compare a census file with the bundled tables")
    d.add_argument("census")
    d.add_argument("--vertices", type=int, action="append")

    f = sub.add_parser("family", help="build a member of a parametric family")
    fs = f.add_subparsers(dest="family", required=True)
    lam = fs.add_parser("lambda")
    for name in ("p", "q", "i", "j"):
        lam.add_argument(f"--{name}", type=int, required=True)
    cat = fs.add_parser("flat-catalog")
    cat.add_argument("--v", type=int, required=True)
    cat.add_argument("--q-cap", type=int, required=True)
    tor = fs.add_parser("torus")
    tor.add_argument("--s", type=int, required=True)
    tor.add_argument("--vector", choices=("s0", "ss"), default="s0")
    pdt = fs.add_parser("petrial-dual-torus")
    pdt.add_argument("--s", type=int, required=True)
    uni = fs.add_parser("universal")
    for name in ("p", "q", "order", "z1", "h", "z2"):
        uni.add_argument(f"--{name}", type=int, required=True)
    for p in (lam, cat, tor, pdt, uni):
        p.add_argument("--format", choices=("json", "table"), default="json")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "enumerate":
            return cmd_enumerate(args, argv)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "diff-census":
            return cmd_diff_census(args)
        return cmd_family(args)
    except UsageError as exc:
        print(f"vfpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CosetLimitExceeded as exc:
        print(f"vfpoly: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except PolyhedronError as exc:
        axiom = getattr(exc, "axiom", None)
        detail = f" (violated: {axiom})" if axiom else ""
        print(f"vfpoly: not a polyhedron: {exc}{detail}", file=sys.stderr)
        return EXIT_MISMATCH
    except (PresentationSyntaxError, ValueError) as exc:
        print(f"vfpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
