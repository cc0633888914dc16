"""Command-line driver.

Exit codes: 0 success, 1 classification case None, 2 unreadable input,
3 subset cap exceeded, 4 input is not a (certified) sphere.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .cache import HomologyCache
from .classify import (
    CertificationError,
    certify_sphere,
    classify,
    decomposition_to_betti,
    mcgavran_decomposition,
    weak_min_non_golod,
)
from .complex import ComplexError, SimplicialComplex, generate_stacked_sphere, join, missing_faces, vertices_of
from .corpus import BUILTINS, builtin, cross_polytope, polygon
from .graphs import Graph, find_chordless_cycles, is_chordal, missing_edge_structure
from .hochster import DEFAULT_CAP, CapExceeded, decompose
from .homology import describe_group
from .io import ComplexFile, ParseError, read, write

EXIT_OK = 0
EXIT_NONE = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_CERT = 4

SCHEMA = 1


class Context:
    """Per-invocation state shared by the subcommands."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.cache = HomologyCache.from_settings(getattr(args, "cache", None))
        self.timing: dict[str, float] = {}

    def timed(self, label: str, fn, *a, **kw):
        start = time.perf_counter()
        try:
            return fn(*a, **kw)
        finally:
            self.timing[label] = round(time.perf_counter() - start, 6)

    def table(self, K: SimplicialComplex):
        a = self.args
        if K.m > DEFAULT_CAP and a.force:
            estimate = (2 ** K.m) * 64
            print(f"warning: {2 ** K.m} subsets, roughly {estimate / 2**20:.0f} MiB of bookkeeping", file=sys.stderr)
        return self.timed("decompose", decompose, K, force=a.force, threads=a.threads, cache=self.cache)


def load(source: str) -> ComplexFile:
    """A file path, ``-`` for stdin, or ``builtin:NAME``."""
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTINS:
            raise ParseError(f"unknown builtin {name!r}")
        return ComplexFile(builtin(name), name)
    if source == "-":
        from .io import parse

        return parse(sys.stdin.read())
    return read(source)


def _set(J: int) -> list[int]:
    return list(vertices_of(J))


def _betti_json(betti: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(betti.items())}


def _bigraded(table) -> list[dict]:
    return [
        {"l": l, "J": _set(J), "rank": table.rank(l, J), "torsion": list(table.torsion(l, J))}
        for l, J in table.nonzero()
    ]


def document(ctx: Context, command: str, cf: ComplexFile | None, result: dict) -> dict:
    doc: dict = {"schema": SCHEMA, "tool": "malring", "version": __version__, "command": command}
    if cf is not None:
        K = cf.complex
        doc["input"] = {"name": cf.name, "sha256": K.digest, "m": K.m, "dim": K.dim, "facets": len(K.facets)}
    doc["result"] = result
    if not ctx.args.no_timing:
        doc["timing"] = ctx.timing
    if ctx.cache is not None:
        doc["cache"] = ctx.cache.stats()
    return doc


def emit(ctx: Context, doc: dict, lines: list[str]) -> None:
    if ctx.args.json:
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))


def _betti_lines(betti: dict[int, int], torsion: dict[int, list[int]] | None = None) -> list[str]:
    out = ["degree  rank"]
    for k, r in sorted(betti.items()):
        out.append(f"{k:>6}  {r}")
    for k, t in sorted((torsion or {}).items()):
        out.append(f"torsion in degree {k}: {describe_group(0, t)}")
    return out


# --- commands ---------------------------------------------------------------------


def cmd_betti(ctx: Context) -> int:
    cf = load(ctx.args.input)
    table = ctx.table(cf.complex)
    torsion = table.torsion_by_degree()
    result = {"betti": _betti_json(table.betti()), "torsion": {str(k): v for k, v in torsion.items()}}
    lines = [f"H*(Z_K), m = {cf.complex.m}"] + _betti_lines(table.betti(), torsion)
    if ctx.args.full:
        result["bigraded"] = _bigraded(table)
        lines.append("l  J  group")
        for e in result["bigraded"]:
            flag = "  TORSION" if e["torsion"] else ""
            lines.append(f"{e['l']}  {e['J']}  {describe_group(e['rank'], e['torsion'])}{flag}")
    emit(ctx, document(ctx, "betti", cf, result), lines)
    return EXIT_OK


def cmd_certify(ctx: Context) -> int:
    cf = load(ctx.args.input)
    cert = ctx.timed("certify", certify_sphere, cf.complex)
    lines = [f"verdict: {cert.verdict} (d = {cert.dim})"]
    lines += [f"  {name}: {'ok' if ok else 'FAILED'}" for name, ok in cert.checks]
    if cert.reason:
        lines.append(f"reason: {cert.reason}")
    emit(ctx, document(ctx, "certify", cf, cert.as_dict()), lines)
    return EXIT_OK if cert.ok else EXIT_CERT


def cmd_classify(ctx: Context) -> int:
    cf = load(ctx.args.input)
    K = cf.complex
    cert = ctx.timed("certify", certify_sphere, K)
    table = ctx.table(K)
    if not cert.ok:
        chord = is_chordal(Graph.from_complex(K))
        result = {
            "case": None,
            "certificate": cert.as_dict(),
            "informational": {
                "betti": _betti_json(table.betti()),
                "torsion": {str(k): v for k, v in table.torsion_by_degree().items()},
                "chordal": chord.chordal,
            },
        }
        lines = [f"not a certified sphere: {cert.reason}", f"chordal skeleton: {chord.chordal}"]
        lines += _betti_lines(table.betti(), table.torsion_by_degree())
        emit(ctx, document(ctx, "classify", cf, result), lines)
        return EXIT_CERT
    report = ctx.timed("classify", classify, K, table)
    result = report.as_dict()
    result["betti"] = _betti_json(table.betti())
    lines = [f"certificate: {cert.verdict} (d = {cert.dim})", f"case: {report.case}"]
    if report.decomposition is not None:
        lines.append(f"decomposition: {report.decomposition}")
    if report.presentation is not None:
        lines.append("relations: " + ("; ".join(report.presentation.relations()) or "none (single sphere)"))
    if report.verification is not None:
        lines.append(f"verified: {report.verification.passed}")
        lines += [f"  {k}: {v}" for k, v in report.verification.checks.items()]
        lines += [f"  ! {msg}" for msg in report.verification.messages]
    lines += [f"note: {n}" for n in report.notes]
    emit(ctx, document(ctx, "classify", cf, result), lines)
    return EXIT_OK if report.verified else EXIT_NONE


def cmd_chordal(ctx: Context) -> int:
    cf = load(ctx.args.input)
    G = Graph.from_complex(cf.complex)
    res = ctx.timed("chordal", is_chordal, G)
    result = {
        "chordal": res.chordal,
        "order": list(res.order) if res.order else None,
        "witness": list(res.witness) if res.witness else None,
    }
    lines = [f"chordal: {res.chordal}"]
    lines.append(f"elimination order: {list(res.order)}" if res.chordal else f"chordless cycle: {list(res.witness)}")
    if ctx.args.full and G.vertex_list and len(G.vertex_list) >= 4:
        cycles = find_chordless_cycles(G)
        result["chordless_cycles"] = [list(c) for c in cycles]
        lines += [f"  {list(c)}" for c in cycles]
    emit(ctx, document(ctx, "chordal", cf, result), lines)
    return EXIT_OK


def cmd_missing(ctx: Context) -> int:
    cf = load(ctx.args.input)
    K = cf.complex
    dims = [ctx.args.dim] if ctx.args.dim is not None else range(1, K.dim + 2)
    faces = {n: [list(f.vertices) for f in missing_faces(K, n)] for n in dims}
    mer = missing_edge_structure(K)
    result = {
        "missing_faces": {str(n): f for n, f in faces.items()},
        "missing_edges": {
            "r": mer.r,
            "disjoint": mer.disjoint,
            "pairs_form_4cycles": mer.pairs_form_4cycles,
            "join_condition": mer.join_condition,
        },
    }
    lines = [f"MF_{n}: {f}" for n, f in faces.items()]
    lines.append(f"missing edges: r = {mer.r}, disjoint = {mer.disjoint}, "
                 f"4-cycles = {mer.pairs_form_4cycles}, join = {mer.join_condition}")
    emit(ctx, document(ctx, "missing", cf, result), lines)
    return EXIT_OK


def cmd_generate(ctx: Context) -> int:
    a = ctx.args
    kind, params = a.kind, a.params
    try:
        if kind == "stacked":
            d, cuts = map(int, params)
            K, name = generate_stacked_sphere(d, cuts, a.seed), f"stacked d={d} cuts={cuts} seed={a.seed}"
        elif kind == "polygon":
            K, name = polygon(int(params[0])), f"polygon {params[0]}"
        elif kind == "cross_polytope":
            K, name = cross_polytope(int(params[0])), f"cross-polytope {params[0]}"
        elif kind == "join":
            left, right = (load(p) for p in params)
            K, name = join(left.complex, right.complex), "join"
        elif kind == "builtin":
            K, name = builtin(params[0]), params[0]
        else:
            print(f"unknown kind {kind!r}", file=sys.stderr)
            return EXIT_PARSE
    except (ValueError, IndexError, KeyError, ComplexError) as exc:
        print(f"bad parameters for {kind}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = write(ComplexFile(K, name), a.format)
    if a.output:
        Path(a.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_predict(ctx: Context) -> int:
    a = ctx.args
    try:
        dec = mcgavran_decomposition(a.m, a.n)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    betti = decomposition_to_betti(dec)
    result = {"decomposition": dec.as_dict(), "betti": _betti_json(betti)}
    emit(ctx, document(ctx, "predict", None, result), [str(dec)] + _betti_lines(betti))
    return EXIT_OK


def cmd_golod(ctx: Context) -> int:
    cf = load(ctx.args.input)
    table = ctx.table(cf.complex)
    v = ctx.timed("golod", weak_min_non_golod, cf.complex, table)
    lines = [
        f"weakly minimally non-Golod: {v.min_non_golod}",
        f"trivial products on K: {v.golod}",
        f"note: {v.note}",
    ]
    emit(ctx, document(ctx, "golod-weak", cf, v.as_dict()), lines)
    return EXIT_OK


def cmd_cache(ctx: Context) -> int:
    if ctx.cache is None:
        print("no cache directory: pass --cache DIR or set MAL_CACHE_DIR", file=sys.stderr)
        return EXIT_PARSE
    action = ctx.args.action
    if action == "stats":
        result = ctx.cache.stats()
    elif action == "verify":
        result = ctx.cache.verify()
    else:
        result = {"removed": ctx.cache.clear()}
    lines = [f"{k}: {v}" for k, v in result.items()]
    emit(ctx, document(ctx, f"cache {action}", None, result), lines)
    return EXIT_OK


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--full", action="store_true", help="include per-bidegree / per-cycle detail")
    common.add_argument("--threads", type=int, default=1, help="worker processes for decompose (0 = all CPUs)")
    common.add_argument("--force", action="store_true", help=f"allow more than {DEFAULT_CAP} vertices")
    common.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable output)")
    common.add_argument("--cache", metavar="DIR", help="persistent cache directory (else $MAL_CACHE_DIR)")

    p = argparse.ArgumentParser(prog="malring", description="Cohomology rings of moment-angle complexes.")
    p.add_argument("--version", action="version", version=f"malring {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name, fn, help):
        s = sub.add_parser(name, parents=[common], help=help)
        s.add_argument("input", help="complex file, '-' for stdin, or builtin:NAME")
        s.set_defaults(func=fn)
        return s

    with_input("betti", cmd_betti, "Betti numbers of Z_K")
    with_input("classify", cmd_classify, "decide the connected-sum question")
    with_input("chordal", cmd_chordal, "chordality of the 1-skeleton")
    s = with_input("missing", cmd_missing, "missing faces and missing-edge structure")
    s.add_argument("--dim", type=int, help="only missing faces of this dimension")
    with_input("certify", cmd_certify, "sphere certificate")
    with_input("golod-weak", cmd_golod, "minimal non-Golodness, products only")

    g = sub.add_parser("generate", parents=[common], help="write a complex")
    g.add_argument("kind", choices=["stacked", "polygon", "cross_polytope", "join", "builtin"])
    g.add_argument("params", nargs="*")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=["text", "json"], default="text")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    pr = sub.add_parser("predict", parents=[common], help="McGavran decomposition for m facets, dimension n")
    pr.add_argument("m", type=int)
    pr.add_argument("n", type=int)
    pr.set_defaults(func=cmd_predict)

    c = sub.add_parser("cache", parents=[common], help="cache administration")
    c.add_argument("action", choices=["stats", "verify", "clear"])
    c.set_defaults(func=cmd_cache)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(Context(args))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAP
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_PARSE
