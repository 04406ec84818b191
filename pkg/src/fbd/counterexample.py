"""Gluing FBD copies around a doubly blocked 3-cycle, and the stuck check."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    DirectedGraph,
    Edge,
    MergePlan,
    PreconditionError,
    block_count,
    count_3cycles,
    flip_delta,
    identify,
)
from .verify import verify_fbd


# Which picked-edge endpoints meet at d, e and f. Copy i contributes the edge
# (a_i, b_i); endpoints are written as (copy, 0) for a_i and (copy, 1) for b_i.
WIRING = {
    6: {
        "d": [(0, 0), (1, 0), (4, 1), (5, 1)],
        "e": [(2, 0), (3, 0), (0, 1), (1, 1)],
        "f": [(4, 0), (5, 0), (2, 1), (3, 1)],
    },
    3: {
        "d": [(0, 0), (2, 1)],
        "e": [(1, 0), (0, 1)],
        "f": [(2, 0), (1, 1)],
    },
}


@dataclass(frozen=True)
class GluedGraph:
    graph: DirectedGraph
    cycle_vertices: tuple[int, int, int]
    copy_offsets: tuple[range, ...] = field(repr=False)
    picked: Edge = (0, 0)

    @property
    def cycle_edges(self) -> list[Edge]:
        d, e, f = self.cycle_vertices
        return [(d, e), (e, f), (f, d)]


def default_pick(d: DirectedGraph, copies: int = 6) -> Edge:
    """Smallest edge, or the smallest doubly blocked edge for three copies."""
    need = 2 if copies == 3 else 1
    for e in d.sorted_edges():
        if block_count(d, e) >= need:
            return e
    raise PreconditionError(f"no edge with block count >= {need}")


def glue_copies(d: DirectedGraph, picked: Edge | None = None, copies: int = 6) -> GluedGraph:
    """Glue ``copies`` disjoint copies of ``d`` into one stuck 3-cycle.

    With six copies every cycle edge is covered by two picked edges, one
    detour each. With three copies each picked edge must already be doubly
    blocked and the copies are wired cyclically.
    """
    if copies not in WIRING:
        raise PreconditionError(f"copies must be 6 or 3, got {copies}")
    if not verify_fbd(d).is_fbd:
        raise PreconditionError("input graph is not FBD")
    if picked is None:
        picked = default_pick(d, copies)
    picked = (int(picked[0]), int(picked[1]))
    if picked not in d.edges:
        raise PreconditionError(f"picked edge {picked} not in graph")
    if copies == 3 and block_count(d, picked) < 2:
        raise PreconditionError(
            f"three-copy gluing needs a doubly blocked edge; {picked} has "
            f"block count {block_count(d, picked)}"
        )

    n = d.vertex_count
    offsets = tuple(range(i * n, (i + 1) * n) for i in range(copies))
    edges = frozenset(
        (u + i * n, v + i * n) for i in range(copies) for u, v in d.edges
    )
    union = DirectedGraph(copies * n, edges)

    def endpoint(copy: int, which: int) -> int:
        return picked[which] + copy * n

    classes = tuple(
        frozenset(endpoint(c, w) for c, w in WIRING[copies][name]) for name in "def"
    )
    glued, old_to_new = identify(union, MergePlan(classes))
    cycle = tuple(old_to_new[min(c)] for c in classes)
    return GluedGraph(glued, cycle, offsets, picked)


@dataclass(frozen=True)
class StuckReport:
    stuck: bool
    three_cycles: int
    min_delta: int | None
    deltas: dict[Edge, int] | None = field(default=None, repr=False)


def is_stuck(g: DirectedGraph, with_deltas: bool = False) -> StuckReport:
    """True iff there is a 3-cycle and every single flip adds 3-cycles.

    Per-edge changes come from :func:`flip_delta`, so no graph is rebuilt.
    """
    if not g.is_simple() or not g.is_oriented():
        raise PreconditionError("is_stuck needs a simple oriented graph")
    count = count_3cycles(g)
    deltas = {e: flip_delta(g, e) for e in g.sorted_edges()}
    low = min(deltas.values(), default=None)
    stuck = count > 0 and low is not None and low > 0
    return StuckReport(stuck, count, low, deltas if with_deltas else None)
