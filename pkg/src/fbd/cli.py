"""Command line front end.

Exit codes are shared by all commands: 0 for an affirmative result, 1 for a
negative finding, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import __version__
from .counterexample import glue_copies, is_stuck
from .graph import GraphError, identify
from .io import (
    file_digest,
    read_edge_list,
    write_edge_list,
    write_lines,
    write_report,
)
from .pyramid import PyramidGraph, build_fbd, build_tree, distance_merge_plan, trim_levels01
from .search import monotone_sequence_bfs, random_probe, scan_tournaments
from .verify import metrics, verify_fbd

log = logging.getLogger("fbd")

OK, NEGATIVE, USAGE = 0, 1, 2


def _edge_arg(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'u,v', got {text!r}") from None
    return u, v


def cmd_build(args) -> int:
    if args.depth < 2:
        log.warning("no fold below depth 2; writing the unfolded tree")
        p = build_tree(args.depth)
    else:
        p = build_fbd(args.depth)
    if args.trim:
        p = trim_levels01(p)
    if args.minimize:
        plan = distance_merge_plan(p.graph)
        graph, old_to_new = identify(p.graph, plan)
        p = PyramidGraph(graph, {n: old_to_new[v] for n, v in p.names.items()}, p.depth)
    write_edge_list(args.out, p.graph)
    if not args.no_names:
        write_lines(f"{args.out}.names", p.name_lines())
    print(f"wrote {p.graph.edge_count} edges on {p.graph.vertex_count} vertices to {args.out}")
    return OK


def cmd_verify(args) -> int:
    g = read_edge_list(args.input)
    report = verify_fbd(g)
    print(report.transcript())
    if args.json:
        write_report(args.json, report, file_digest(args.input))
    return OK if report.is_fbd else NEGATIVE


def cmd_metrics(args) -> int:
    g = read_edge_list(args.input)
    m = metrics(g)
    print(f"edges = {g.edge_count}")
    print(f"alpha_avg = {m.alpha_avg.numerator}/{m.alpha_avg.denominator}")
    print(f"alpha_max = {m.alpha_max}")
    print("alpha histogram = " + " ".join(f"{k}:{v}" for k, v in m.histogram.items()))
    print("block count histogram = " + " ".join(f"{k}:{v}" for k, v in m.block_histogram.items()))
    print(f"unblocked edges = {len(m.unblocked)}")
    for u, v in m.unblocked[: args.show]:
        print(f"  {u},{v}")
    return OK


def cmd_glue(args) -> int:
    d = read_edge_list(args.input)
    glued = glue_copies(d, args.edge, args.copies)
    write_edge_list(args.out, glued.graph)
    write_lines(f"{args.out}.cycle", [f"{name},{v}" for name, v in zip("def", glued.cycle_vertices)])
    g = glued.graph
    print(f"glued {args.copies} copies on picked edge {glued.picked[0]},{glued.picked[1]}: "
          f"{g.vertex_count} vertices, {g.edge_count} edges")
    print("cycle d,e,f = " + ",".join(map(str, glued.cycle_vertices)))
    return OK


def cmd_stuck(args) -> int:
    g = read_edge_list(args.input)
    r = is_stuck(g)
    print(f"3-cycles = {r.three_cycles}")
    print(f"smallest flip delta = {r.min_delta}")
    print("stuck: every flip increases the 3-cycle count" if r.stuck else "not stuck")
    return OK if r.stuck else NEGATIVE


def cmd_search(args) -> int:
    g = read_edge_list(args.input)
    r = monotone_sequence_bfs(g, args.mode, args.cap)
    print(f"states explored = {r.states_explored}")
    if not r.found:
        print(r.outcome)
        return NEGATIVE
    t = r.trace
    print(f"start 3-cycles = {t.start_count}")
    for (u, v), c in zip(t.flips, t.counts):
        print(f"flip {u},{v} -> {c}")
    print(f"trace length = {len(t)}")
    return OK


def cmd_probe(args) -> int:
    s = random_probe(args.n, args.p, args.trials, args.seed, args.mode, args.cap, args.dump)
    for line in s.lines():
        print(line)
    return OK if s.none == 0 and s.cap_exceeded == 0 else NEGATIVE


def cmd_tournaments(args) -> int:
    total = 0
    for n in range(1, args.n + 1):
        k = scan_tournaments(n)
        total += k
        print(f"n = {n}: {k} of {2 ** (n * (n - 1) // 2)} orientations are FBD")
    return OK if total == 0 else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fbd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the folded pyramid graph")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--trim", action="store_true", help="drop levels 0 and 1")
    p.add_argument("--minimize", action="store_true", help="merge far-apart vertices")
    p.add_argument("--no-names", action="store_true", help="skip the OUT.names sidecar")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run the four FBD checks")
    p.add_argument("input")
    p.add_argument("--json", help="also write a structured report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metrics", help="3-clique and blocking statistics")
    p.add_argument("input")
    p.add_argument("--show", type=int, default=20, help="unblocked edges to list")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("glue", help="glue FBD copies into a stuck 3-cycle")
    p.add_argument("input")
    p.add_argument("--edge", type=_edge_arg, help="picked edge 'u,v'")
    p.add_argument("--copies", type=int, choices=(6, 3), default=6)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("stuck", help="check that every flip adds 3-cycles")
    p.add_argument("input")
    p.set_defaults(func=cmd_stuck)

    p = sub.add_parser("search", help="BFS for a monotone flip sequence")
    p.add_argument("input")
    p.add_argument("--mode", choices=("weak", "strict"), default="weak")
    p.add_argument("--cap", type=int, default=1 << 20)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("probe", help="search random small graphs")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--p", type=Fraction, default=Fraction(1, 2))
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=("weak", "strict"), default="weak")
    p.add_argument("--cap", type=int, default=1 << 16)
    p.add_argument("--dump", help="directory for graphs without a sequence")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("tournaments", help="count FBD tournaments on up to n vertices")
    p.add_argument("--n", type=int, default=5)
    p.set_defaults(func=cmd_tournaments)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
