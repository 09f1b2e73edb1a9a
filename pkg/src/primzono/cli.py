"""``primzono`` command-line front end.

Exit codes: 0 success, 1 bad input (flags, files, failed verification),
2 a resource cap was exceeded.  Errors are printed to stderr as a single
JSON line ``{"error": ..., "message": ..., "exit_code": ...}``.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional

import numpy as np

from .cache import VertexCache
from .diameter import DiameterRecord, construct_dk, delta_2k
from .generators import DEFAULT_GENERATOR_CAP, enumerate_generators
from .matroid import (DEFAULT_BASIS_CAP, ExplicitMatroid, GraphicMatroid, UniformMatroid,
                      multicriteria_solve, solve_exhaustive, trade_in_by_name)
from .numeric import PrimzonoError, ResourceLimitError, parse_norm
from .reference import run_reference
from .serialize import document, dumps, generators_csv, summary_csv, vertices_csv
from .zonotope import DEFAULT_VERTEX_CAP, enumerate_vertices, summarize


class UsageError(Exception):
    """Bad flags or malformed input files (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- input files

def _content_lines(path):
    with open(path) as fh:
        for no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if line:
                yield no, line


def _ints(tokens, path, no) -> list:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise UsageError(f"{path}:{no}: expected integers, got {' '.join(tokens)!r}") from None


def read_matroid(path):
    """``uniform n r`` | ``graphic`` + ``u v`` lines | ``explicit`` + 0/1 basis lines."""
    lines = list(_content_lines(path))
    if not lines:
        raise UsageError(f"{path}:1: empty matroid file")
    no, head = lines[0]
    kind, *rest = head.split()
    try:
        if kind == "uniform":
            if len(rest) != 2 or len(lines) > 1:
                raise UsageError(f"{path}:{no}: expected 'uniform n r' on a single line")
            n, r = _ints(rest, path, no)
            return UniformMatroid(n, r)
        if kind == "graphic":
            edges = []
            for no, line in lines[1:]:
                tok = line.replace(",", " ").split()
                if len(tok) != 2:
                    raise UsageError(f"{path}:{no}: expected an edge 'u v'")
                edges.append(tuple(tok))
            if rest or not edges:
                raise UsageError(f"{path}:{no}: 'graphic' must be followed by edge lines")
            return GraphicMatroid(edges)
        if kind == "explicit":
            bases = []
            for no, line in lines[1:]:
                tok = line.replace(",", " ").split()
                if len(tok) == 1 and set(tok[0]) <= {"0", "1"}:
                    tok = list(tok[0])
                bases.append(_ints(tok, path, no))
            return ExplicitMatroid(bases)
    except UsageError:
        raise
    except Exception as exc:
        raise UsageError(f"{path}:{no}: {exc}") from None
    raise UsageError(f"{path}:{lines[0][0]}: unknown matroid kind {kind!r}")


def read_utility(path, d: int) -> np.ndarray:
    rows = []
    with open(path, newline="") as fh:
        for no, row in enumerate(csv.reader(fh), start=1):
            row = [c.strip() for c in row if c.strip()]
            if row:
                rows.append((no, _ints(row, path, no)))
    if len(rows) != d:
        raise UsageError(f"{path}:{rows[-1][0] if rows else 1}: expected {d} rows, found {len(rows)}")
    n = len(rows[0][1])
    for no, r in rows:
        if len(r) != n:
            raise UsageError(f"{path}:{no}: row has {len(r)} entries, expected {n}")
    return np.asarray([r for _, r in rows], dtype=np.int64)


# ---------------------------------------------------------------- commands

def _cache(args) -> Optional[VertexCache]:
    if args.no_cache:
        return None
    return VertexCache(args.cache_dir)


def _vertices(args):
    G = enumerate_generators(args.dim, args.norm_bound, args.norm, args.positive, cap=args.generator_cap)
    cache = _cache(args)

    def compute():
        return enumerate_vertices(G, cap=args.vertex_cap)

    if cache is None:
        return G, compute()
    return G, cache.get_or_compute(args.dim, args.norm_bound, args.norm, args.positive, compute)


def cmd_generators(args) -> str:
    G = enumerate_generators(args.dim, args.norm_bound, args.norm, args.positive, cap=args.generator_cap)
    return generators_csv(G) if args.format == "csv" else dumps(document(G))


def cmd_vertices(args) -> str:
    G, V = _vertices(args)
    return vertices_csv(V) if args.format == "csv" else dumps(document(G, V))


def cmd_summary(args) -> str:
    G, V = _vertices(args)
    s = summarize(G, V)
    if args.format == "csv":
        return summary_csv(G, s)
    return dumps(document(G, summary=s))


def _record_dict(r: DiameterRecord) -> dict:
    return {"d": r.d, "k": r.k, "diameter": r.diameter, "grid": r.grid_k,
            "bound": (r.k + 1) * r.d // 2, "inferred_schedule": r.inferred_schedule,
            "generators": [list(g) for g in r.generator_subset]}


def _records_out(records, fmt: str) -> str:
    dicts = [_record_dict(r) for r in records]
    if fmt == "csv":
        return "d,k,diameter,grid,bound,size\n" + "".join(
            f"{r['d']},{r['k']},{r['diameter']},{r['grid']},{r['bound']},{len(r['generators'])}\n"
            for r in dicts)
    return dumps({"records": dicts})


def cmd_delta(args) -> str:
    if args.k is None:
        raise UsageError("delta needs -k")
    rec = delta_2k(args.k) if args.dim == 2 else construct_dk(args.dim, args.k)
    return _records_out([rec], args.format)


def cmd_delta_table(args) -> str:
    return _records_out([delta_2k(k) for k in range(1, args.kmax + 1)], args.format)


def cmd_matroid_solve(args) -> str:
    M = read_matroid(args.matroid_file)
    W = read_utility(args.w_file, args.dim)
    try:
        f = trade_in_by_name(args.f, args.dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sol = multicriteria_solve(M, W, f, args.dim, args.norm_bound, threads=args.threads,
                              cap=args.vertex_cap)
    out = {"basis": list(sol.basis), "projection": list(sol.projection),
           "objective": sol.objective, "trade_in": f.name, "counterparts": sol.counterparts,
           "queries": sol.queries}
    if args.verify_bruteforce:
        x, proj = solve_exhaustive(M, W, f, cap=args.basis_cap)
        out["bruteforce"] = {"basis": list(x), "projection": list(proj), "objective": f.value(proj),
                             "agrees": f.value(proj) == sol.objective}
    if args.format == "csv":
        return ("basis,projection,objective,counterparts,queries\n"
                f"{' '.join(map(str, sol.basis))},{' '.join(map(str, sol.projection))},"
                f"{sol.objective},{sol.counterparts},{sol.queries}\n")
    return dumps(out)


def cmd_verify_reference(args) -> tuple:
    results = run_reference(long=args.long, cache=_cache(args))
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        extra = "" if r.passed else f"  expected={r.expected!r} actual={r.actual!r}" + (
            f" error={r.error}" if r.error else "")
        lines.append(f"{status} {r.name} ({r.seconds:.2f}s){extra}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} reference checks passed")
    return "\n".join(lines) + "\n", (1 if failed else 0)


# ---------------------------------------------------------------- parser

def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


_positive_int.__name__ = "positive integer"


def _norm(s: str):
    try:
        return parse_norm(s)
    except Exception:
        raise argparse.ArgumentTypeError(f"invalid norm {s!r}; use 1, 2, ... or inf") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cache-dir", default=None,
                        help="vertex cache directory (default: $PRIMZONO_CACHE or ~/.cache/primzono)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--threads", type=_positive_int, default=1)
    common.add_argument("--vertex-cap", type=_positive_int, default=DEFAULT_VERTEX_CAP)
    common.add_argument("--generator-cap", type=_positive_int, default=DEFAULT_GENERATOR_CAP)
    common.add_argument("--basis-cap", type=_positive_int, default=DEFAULT_BASIS_CAP)

    family = _Parser(add_help=False)
    family.add_argument("-d", "--dim", type=_positive_int, required=True)
    family.add_argument("-p", "--norm-bound", type=_positive_int, required=True)
    family.add_argument("-q", "--norm", type=_norm, default=1)
    family.add_argument("--positive", action="store_true")

    parser = _Parser(prog="primzono", description="Primitive zonotopes, lattice diameters "
                     "and multicriteria matroid optimization.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn, helptext in (("generators", cmd_generators, "list primitive generators"),
                               ("vertices", cmd_vertices, "enumerate vertices with witnesses"),
                               ("summary", cmd_summary, "vertex count, diameter and grid size")):
        sp = sub.add_parser(name, parents=[family, common], help=helptext)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("delta", parents=[common], help="certified large-diameter lattice polytope")
    sp.add_argument("-d", "--dim", type=_positive_int, required=True)
    sp.add_argument("-k", type=_positive_int)
    sp.set_defaults(func=cmd_delta)

    sp = sub.add_parser("delta-table", parents=[common], help="largest diameters of (2,k)-polygons")
    sp.add_argument("--kmax", type=_positive_int, default=17)
    sp.set_defaults(func=cmd_delta_table)

    sp = sub.add_parser("matroid-solve", parents=[common], help="maximize f(Wx) over matroid bases")
    sp.add_argument("matroid_file")
    sp.add_argument("w_file")
    sp.add_argument("-f", default="squared_norm",
                    help="squared_norm | max_coordinate | linear | linear:c1,...,cd")
    sp.add_argument("-d", "--dim", type=_positive_int, required=True)
    sp.add_argument("-p", "--norm-bound", type=_positive_int, required=True)
    sp.add_argument("--verify-bruteforce", action="store_true")
    sp.set_defaults(func=cmd_matroid_solve)

    sp = sub.add_parser("verify-reference", parents=[common], help="recompute all known reference values")
    sp.add_argument("--long", action="store_true", help="include the multi-minute checks")
    sp.set_defaults(func=cmd_verify_reference)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message, "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail("UsageError", str(exc), 1)
    try:
        out = args.func(args)
    except ResourceLimitError as exc:
        return _fail("ResourceLimitError", str(exc), 2)
    except (UsageError, PrimzonoError, ValueError, OSError) as exc:
        return _fail(type(exc).__name__, str(exc), 1)
    code = 0
    if isinstance(out, tuple):
        out, code = out
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
