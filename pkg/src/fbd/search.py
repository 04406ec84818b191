"""Exhaustive monotone flip-sequence search on small graphs.

An orientation of a fixed underlying graph is a bitmask over its edges in
canonical order (ascending ``(lo, hi)`` pairs); bit ``i`` set means pair ``i``
points from ``hi`` to ``lo``. The 3-cycle count is updated per flip from the
triangles through the flipped pair only.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .graph import DirectedGraph, Edge, GraphError, PreconditionError, count_3cycles, flip
from .verify import verify_fbd

MODES = ("weak", "strict")


@dataclass(frozen=True)
class FlipTrace:
    start_count: int
    flips: tuple[Edge, ...] = ()
    counts: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.flips)

    @property
    def final_count(self) -> int:
        return self.counts[-1] if self.counts else self.start_count

    def replay(self, g: DirectedGraph) -> list[int]:
        """Apply the flips to ``g`` with full recounts; returns the counts seen."""
        seen = []
        for e in self.flips:
            g = flip(g, e)
            seen.append(count_3cycles(g))
        return seen


@dataclass(frozen=True)
class SearchResult:
    outcome: str  # "found" | "none" | "cap_exceeded"
    states_explored: int
    trace: FlipTrace | None = None

    @property
    def found(self) -> bool:
        return self.outcome == "found"


class OrientationSpace:
    """Orientations of one underlying simple graph, with cheap flip deltas."""

    def __init__(self, g: DirectedGraph):
        if not g.is_simple() or not g.is_oriented():
            raise PreconditionError("flip search needs a simple oriented graph")
        self.pairs = sorted((min(u, v), max(u, v)) for u, v in g.edges)
        index = {p: i for i, p in enumerate(self.pairs)}
        self.start = 0
        for u, v in g.edges:
            if u > v:
                self.start |= 1 << index[(v, u)]
        nb = g.neighbors
        # triangles as (ab, bc, ac) pair indices for a < b < c
        self.triangles = []
        for a, b in self.pairs:
            for c in nb[a] & nb[b]:
                if c > b:
                    self.triangles.append((index[(a, b)], index[(b, c)], index[(a, c)]))
        self.through = [[] for _ in self.pairs]
        for t in self.triangles:
            for i in t:
                self.through[i].append(t)

    @staticmethod
    def _cyclic(state: int, t: tuple[int, int, int]) -> bool:
        ab = (state >> t[0]) & 1
        bc = (state >> t[1]) & 1
        ac = (state >> t[2]) & 1
        return ab == bc and ac != ab

    def count(self, state: int) -> int:
        return sum(self._cyclic(state, t) for t in self.triangles)

    def delta(self, state: int, i: int) -> int:
        flipped = state ^ (1 << i)
        return sum(
            self._cyclic(flipped, t) - self._cyclic(state, t) for t in self.through[i]
        )

    def edge(self, state: int, i: int) -> Edge:
        lo, hi = self.pairs[i]
        return (hi, lo) if (state >> i) & 1 else (lo, hi)

    def graph(self, state: int, vertex_count: int) -> DirectedGraph:
        return DirectedGraph(vertex_count, frozenset(self.edge(state, i) for i in range(len(self.pairs))))


def monotone_sequence_bfs(
    g: DirectedGraph, mode: str = "weak", state_cap: int = 1 << 20
) -> SearchResult:
    """Breadth-first search for a flip sequence that drives the 3-cycle count to 0.

    ``weak`` admits flips that do not increase the count, ``strict`` only
    flips that decrease it. Flips are expanded in canonical edge order, so
    the first trace found is deterministic. ``none`` means every reachable
    state under the constraint was explored.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    space = OrientationSpace(g)
    start, start_count = space.start, space.count(space.start)
    if start_count == 0:
        return SearchResult("found", 1, FlipTrace(0))
    parent: dict[int, tuple[int, int, int] | None] = {start: None}
    counts = {start: start_count}
    queue = deque([start])
    m = len(space.pairs)
    while queue:
        state = queue.popleft()
        c = counts[state]
        for i in range(m):
            d = space.delta(state, i)
            if d > 0 or (mode == "strict" and d == 0):
                continue
            nxt = state ^ (1 << i)
            if nxt in parent:
                continue
            parent[nxt] = (state, i, c + d)
            counts[nxt] = c + d
            if c + d == 0:
                return SearchResult("found", len(parent), _trace(space, parent, nxt, start_count))
            if len(parent) >= state_cap:
                return SearchResult("cap_exceeded", len(parent))
            queue.append(nxt)
    return SearchResult("none", len(parent))


def _trace(space: OrientationSpace, parent, state: int, start_count: int) -> FlipTrace:
    flips, counts = [], []
    while parent[state] is not None:
        prev, i, c = parent[state]
        flips.append(space.edge(prev, i))
        counts.append(c)
        state = prev
    return FlipTrace(start_count, tuple(reversed(flips)), tuple(reversed(counts)))


# --------------------------------------------------------------------------
# tournaments and random probes


def orientations(n: int, pairs: list[tuple[int, int]] | None = None):
    """Every orientation of ``pairs`` (default: all pairs of ``K_n``)."""
    if pairs is None:
        pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield DirectedGraph(
            n,
            frozenset((v, u) if (mask >> i) & 1 else (u, v) for i, (u, v) in enumerate(pairs)),
        )


def scan_tournaments(n: int) -> int:
    """Number of orientations of ``K_n`` that pass the FBD check."""
    if not 1 <= n <= 5:
        raise GraphError(f"scan_tournaments needs 1 <= n <= 5, got {n}")
    return sum(verify_fbd(t).is_fbd for t in orientations(n))


def random_oriented_graph(n: int, edge_probability: float, rng: random.Random) -> DirectedGraph:
    edges = set()
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < edge_probability:
            edges.add((u, v) if rng.random() < 0.5 else (v, u))
    return DirectedGraph(n, frozenset(edges))


@dataclass
class ProbeSummary:
    n: int
    edge_probability: str
    trials: int
    seed: int
    mode: str
    found: int = 0
    none: int = 0
    cap_exceeded: int = 0
    start_counts: Counter = field(default_factory=Counter)
    longest_trace: int = 0
    failures: list[list[Edge]] = field(default_factory=list)

    def lines(self) -> list[str]:
        hist = " ".join(f"{k}:{v}" for k, v in sorted(self.start_counts.items()))
        return [
            f"n = {self.n}, p = {self.edge_probability}, trials = {self.trials}, "
            f"seed = {self.seed}, mode = {self.mode}",
            f"found = {self.found}",
            f"none = {self.none}",
            f"cap_exceeded = {self.cap_exceeded}",
            f"longest trace = {self.longest_trace}",
            f"start 3-cycle counts = {hist}",
        ]


def random_probe(
    n: int,
    edge_probability: float | Fraction | str,
    trials: int,
    seed: int,
    mode: str = "weak",
    state_cap: int = 1 << 16,
    dump_dir: str | Path | None = None,
) -> ProbeSummary:
    """Search every sampled graph exhaustively and tally the outcomes.

    Trial ``i`` draws from its own generator seeded with ``f"{seed}:{i}"``.
    Graphs without a monotone sequence are kept in ``failures`` and, with
    ``dump_dir``, written out as edge lists.
    """
    if n > 7:
        raise GraphError("random_probe searches exhaustively; keep n <= 7")
    p = float(Fraction(edge_probability))
    summary = ProbeSummary(n, str(Fraction(edge_probability)), trials, seed, mode)
    for i in range(trials):
        g = random_oriented_graph(n, p, random.Random(f"{seed}:{i}"))
        result = monotone_sequence_bfs(g, mode, state_cap)
        if result.found:
            summary.found += 1
            summary.start_counts[result.trace.start_count] += 1
            summary.longest_trace = max(summary.longest_trace, len(result.trace))
        elif result.outcome == "none":
            summary.none += 1
            summary.failures.append(g.sorted_edges())
        else:
            summary.cap_exceeded += 1
            summary.failures.append(g.sorted_edges())
    if dump_dir is not None and summary.failures:
        from .io import write_edge_list

        out = Path(dump_dir)
        out.mkdir(parents=True, exist_ok=True)
        for k, edges in enumerate(summary.failures):
            write_edge_list(out / f"probe-{seed}-{k}.txt", DirectedGraph(n, frozenset(edges)))
    return summary
