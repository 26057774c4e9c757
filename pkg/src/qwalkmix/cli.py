"""``qwalk-mix`` command line front end.

Exit codes: 0 success, 1 usage error, 2 invariant violation found by the
report's self-checks, 3 unreadable input or invalid graph.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .errors import GraphError, QWalkError
from .graph import Graph, preset, read_graph
from .report import DEFAULT_TOL, SECTIONS, AnalysisRequest, gnuplot_table, run_report, write_csv
from .walk import mixing_closed_form

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qwalk-mix", description="Average vertex mixing matrix of the marked-vertex quantum walk.")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--graph", metavar="PATH", help="graph file")
    src.add_argument("--preset", metavar="NAME:ARGS", help="cycle:N, complete:N, hypercube:D, bipartite:A,B, cube, petersen")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--marked", metavar="LIST", help="comma-separated vertices, or first:K")
    p.add_argument("--sections", metavar="LIST", default="all", help="mixing,bounds,bases,classify or all")
    p.add_argument("--oracle-T", type=int, default=0, metavar="INT", help="time-average horizon (0 skips it)")
    p.add_argument("--tol", type=float, default=None, help="self-check and tightness tolerance")
    p.add_argument("--table", action="store_true", help="print M̂ as a gnuplot table instead of the report")
    p.add_argument("--csv", metavar="PATH", help="also write M̂ as CSV")
    p.add_argument("--include-U", action="store_true", help="include the transition matrix in the report")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    return p


def _parse_marked(text: str, g: Graph) -> tuple[int, ...]:
    text = text.strip()
    try:
        if text.startswith("first:"):
            return tuple(range(int(text.split(":", 1)[1])))
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise UsageError(f"cannot parse --marked {text!r}") from None


def parse_request(argv: Sequence[str] | None = None) -> AnalysisRequest:
    """Parse flags and load the graph.

    Raises ``UsageError`` for bad flags and ``GraphError``/``OSError``/
    ``ValueError`` for unreadable graphs.
    """
    args = build_parser().parse_args(argv)
    if not args.graph and not args.preset:
        raise UsageError("one of --graph or --preset is required")
    if args.marked is None:
        raise UsageError("--marked is required")
    if args.oracle_T < 0:
        raise UsageError("--oracle-T must be non-negative")

    sections = tuple(s.strip() for s in args.sections.split(",") if s.strip())
    if not sections:
        raise UsageError("--sections must name at least one section")
    if "all" in sections:
        sections = SECTIONS
    unknown = [s for s in sections if s not in SECTIONS]
    if unknown:
        raise UsageError(f"unknown sections {unknown}; choose from {', '.join(SECTIONS)} or all")

    tol = args.tol
    if tol is None:
        env = os.environ.get("QWALK_TOL")
        try:
            tol = float(env) if env else DEFAULT_TOL
        except ValueError:
            raise UsageError(f"QWALK_TOL={env!r} is not a number") from None
    if tol <= 0:
        raise UsageError("tolerance must be positive")

    if args.graph:
        g = read_graph(args.graph, args.format)
        source = args.graph
    else:
        g = preset(args.preset)
        source = f"preset:{args.preset}"
    S = _parse_marked(args.marked, g)
    bad = [v for v in S if not 0 <= v < g.n]
    if bad:
        raise GraphError(f"marked vertices {bad} are not in the graph")
    req = AnalysisRequest(graph=g, S=S, sections=sections, tol=tol, oracle_T=args.oracle_T,
                          include_U=args.include_U, source=source, table=args.table, csv=args.csv, out=args.out)
    return req


def main(argv: Sequence[str] | None = None) -> int:
    try:
        req = parse_request(argv)
    except UsageError as exc:
        print(f"qwalk-mix: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, OSError, ValueError) as exc:
        print(f"qwalk-mix: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        if req.table:
            text = gnuplot_table(mixing_closed_form(req.graph, req.S).Mhat)
            code = EXIT_OK
        else:
            doc = run_report(req)
            text, code = doc.to_json(), doc.exit_code
        if req.csv:
            write_csv(mixing_closed_form(req.graph, req.S).Mhat, req.csv)
    except QWalkError as exc:
        print(f"qwalk-mix: input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if req.out:
        with open(req.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_INVARIANT:
        print("qwalk-mix: self-check failed: " + "; ".join(doc.violations), file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
