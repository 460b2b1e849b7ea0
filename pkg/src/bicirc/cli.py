"""Command-line interface: ``bicirc graph|matroid|reps|decompose|verify``.

Exit status is 0 on success (including skipped checks), 1 when a check fails
or the two bicircular constructions disagree, and 2 for bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bicircular import (
    BUILTIN_MATROIDS,
    bicircular_matroid,
    enumerate_representations,
    matrix_matroid_of,
    named_matroid,
)
from .decomp import canonical_tree_decomposition, to_dot
from .matroid import Matroid, dual, format_mtd, parse_mtd
from .multigraph import (
    FREE,
    LOOP,
    BgrParseError,
    Multigraph,
    build_named,
    canonical_form,
    delete_edges,
    format_bgr,
    graph_properties,
    parse_bgr,
)
from .verify import CHECKS, reports_to_json, run_suite


class InputError(Exception):
    """Bad user input; reported on stderr with exit status 2."""


class DefectError(Exception):
    """The two bicircular constructions disagree; exit status 1."""


def _load_graph(key: str | None, path: str | None) -> Multigraph:
    if path is not None:
        try:
            return parse_bgr(Path(path).read_text())
        except OSError as err:
            raise InputError(f"cannot read {path}: {err.strerror}") from err
        except BgrParseError as err:
            raise InputError(f"{path}: {err}") from err
    try:
        return build_named(key)
    except (KeyError, FileNotFoundError) as err:
        raise InputError(err.args[0] if err.args else str(err)) from err


def _checked_bicircular(g: Multigraph) -> Matroid:
    if len(g) > 16:
        raise InputError("at most 16 edges are supported here")
    m = bicircular_matroid(g)
    if matrix_matroid_of(g) != m:
        raise DefectError("combinatorial and matrix constructions of B(G) disagree")
    return m


def _looks_like_bgr(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return line.startswith("vertices")
    return False


def _load_matroid_file(path: str) -> Matroid:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from err
    try:
        if _looks_like_bgr(text):
            return _checked_bicircular(parse_bgr(text))
        return parse_mtd(text)
    except ValueError as err:
        raise InputError(f"{path}: {err}") from err


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("key", nargs="?", help="named graph, e.g. 2C3, K4++, T_2_2_3, C3o")
    src.add_argument("--file", help="graph in .bgr format")


def cmd_graph(args) -> int:
    g = _load_graph(args.key, args.file)
    if args.canonical:
        print(canonical_form(g).hex())
    elif args.props:
        p = graph_properties(g)
        print(f"2-connected={str(p.is_2connected).lower()}")
        print(f"min_degree={p.min_degree}")
        print(f"max_loops_per_vertex={p.max_loops_per_vertex}")
        print(f"free_edges={str(p.has_free_edge).lower()}")
    else:
        sys.stdout.write(format_bgr(g))
    return 0


def _circuits_text(m: Matroid) -> str:
    lines = [f"ground {m.n}"]
    lines += ["circuit " + " ".join(str(i) for i in range(m.n) if c >> i & 1) for c in sorted(m.circuits, key=lambda c: (bin(c).count("1"), c))]
    return "\n".join(lines) + "\n"


def cmd_matroid(args) -> int:
    if args.source == "from-graph":
        m = _checked_bicircular(_load_graph(args.key, args.file))
    else:
        m = _load_matroid_file(args.path)
    if m.n > 20:
        raise InputError("at most 20 elements are supported")
    if args.dual:
        m = dual(m)
    if args.rank:
        print(m.rank)
    elif args.circuits:
        sys.stdout.write(_circuits_text(m))
    else:
        sys.stdout.write(format_mtd(m))
    return 0


def cmd_reps(args) -> int:
    if Path(args.target).is_file():
        m = _load_matroid_file(args.target)
    else:
        try:
            m = named_matroid(args.target)
        except (KeyError, FileNotFoundError) as err:
            raise InputError(f"unknown matroid {args.target!r}; builtins: {', '.join(BUILTIN_MATROIDS)}") from err
    try:
        cat = enumerate_representations(m)
    except ValueError as err:
        raise InputError(str(err)) from err
    for i, g in enumerate(cat.graphs):
        if i:
            print()
        sys.stdout.write(format_bgr(g, [f"representation {i + 1}"]))
    print(f"# {len(cat)} representation{'' if len(cat) == 1 else 's'}")
    return 0


def cmd_decompose(args) -> int:
    g = _load_graph(args.key, args.file)
    if any(e.kind == FREE for e in g.edges):
        raise InputError("free edges cannot be decomposed")
    loops = [x for x, e in zip(g.labels, g.edges) if e.kind == LOOP]
    if loops:
        print(f"warning: removing {len(loops)} loops before decomposing", file=sys.stderr)
        g = delete_edges(g, loops)
    try:
        t = canonical_tree_decomposition(g)
    except ValueError as err:
        raise InputError(str(err)) from err
    if args.dot:
        sys.stdout.write(to_dot(t))
        return 0
    kinds = [n.kind for n in t.nodes]
    summary = ", ".join(f"{kinds.count(k)} {k}" for k in sorted(set(kinds)))
    print(f"# {len(t.nodes)} nodes: {summary}")
    for i, node in enumerate(t.nodes):
        names = " ".join(str(x) for x in node.graph.labels)
        sys.stdout.write(format_bgr(node.graph, [f"node {i}: {node.kind}", f"edges {names}"]))
    for e in t.edges:
        print(f"# tree edge {e.a} -- {e.b} along {e.label}")
    return 0


def cmd_verify(args) -> int:
    names = None if args.suite == "all" else [args.suite]
    if names and names[0] not in CHECKS:
        raise InputError(f"unknown check {args.suite!r}; choose from all, {', '.join(sorted(CHECKS))}")
    if args.max_edges > 9:
        raise InputError("--max-edges is bounded by 9")
    reports = run_suite(names, max_edges=args.max_edges, jobs=args.jobs)
    for r in reports:
        print(f"{r.check_id}: {r.status} ({r.elapsed_ms} ms)")
        if r.counterexample:
            sys.stdout.write(r.counterexample)
    if any(r.status.startswith("skipped") for r in reports):
        print("warning: some checks were skipped", file=sys.stderr)
    if args.report:
        try:
            Path(args.report).write_text(reports_to_json(reports))
        except OSError as err:
            raise InputError(f"cannot write {args.report}: {err.strerror}") from err
    return 1 if any(r.failed for r in reports) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bicirc", description="Bicircular matroids of multigraphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="show a graph, its canonical form or its properties")
    _add_graph_input(p)
    view = p.add_mutually_exclusive_group()
    view.add_argument("--show", action="store_true", help="print the graph in .bgr format (default)")
    view.add_argument("--canonical", action="store_true", help="print the canonical form in hex")
    view.add_argument("--props", action="store_true", help="print connectivity, degree and loop data")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("matroid", help="bicircular matroid of a graph, or a matroid file")
    msub = p.add_subparsers(dest="source", required=True)
    views = []
    q = msub.add_parser("from-graph", help="B(G) for a named graph or .bgr file")
    _add_graph_input(q)
    views.append(q)
    q = msub.add_parser("from-file", help="a .mtd matroid or a .bgr graph")
    q.add_argument("path")
    views.append(q)
    for q in views:
        q.add_argument("--dual", action="store_true", help="use the dual matroid")
        view = q.add_mutually_exclusive_group()
        view.add_argument("--bases", action="store_true", help="print bases in .mtd format (default)")
        view.add_argument("--circuits", action="store_true", help="print circuits")
        view.add_argument("--rank", action="store_true", help="print the rank")
        q.set_defaults(func=cmd_matroid)

    p = sub.add_parser("reps", help="all bicircular representations of a matroid")
    p.add_argument("target", help=f"a .mtd file or one of {', '.join(BUILTIN_MATROIDS)}")
    p.set_defaults(func=cmd_reps)

    p = sub.add_parser("decompose", help="canonical tree decomposition of a non-separable graph")
    _add_graph_input(p)
    p.add_argument("--dot", action="store_true", help="print Graphviz DOT")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--suite", default="all", help="all or a single check id")
    p.add_argument("--max-edges", type=int, default=9, help="edge bound for the main theorem scan (at most 9)")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the main theorem scan")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except DefectError as err:
        print(f"defect: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
