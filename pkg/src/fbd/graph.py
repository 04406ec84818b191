"""Immutable directed graphs and the primitive operations used throughout.

Vertices are the contiguous integers ``0 .. vertex_count - 1``. Self-loops and
antiparallel pairs are representable on purpose: a bad quotient should be
visible in a verification report instead of being impossible to build.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid input to a graph operation (bad id, missing edge, ...)."""


class MissingEdgeError(GraphError):
    pass


class PreconditionError(GraphError):
    """An operation's input does not meet its stated precondition."""


@dataclass(frozen=True)
class DirectedGraph:
    vertex_count: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        n = self.vertex_count
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def succ(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def pred(self) -> tuple[frozenset[int], ...]:
        inc: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            inc[v].add(u)
        return tuple(frozenset(s) for s in inc)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        """Underlying undirected neighbourhoods, loops excluded."""
        return tuple(
            (s | p) - {v} for v, (s, p) in enumerate(zip(self.succ, self.pred))
        )

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def is_simple(self) -> bool:
        """No self-loops."""
        return all(u != v for u, v in self.edges)

    def is_oriented(self) -> bool:
        """No antiparallel pairs (a loop counts as its own reverse)."""
        return all((v, u) not in self.edges for u, v in self.edges)

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=dtype)
        if self.edges:
            src, dst = zip(*self.edges)
            a[list(src), list(dst)] = 1
        return a

    def __repr__(self) -> str:
        return f"DirectedGraph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"


def from_edge_list(pairs: Iterable[Sequence[int]]) -> DirectedGraph:
    """Build a graph from ``(u, v)`` pairs; the vertex count is ``1 + max id``."""
    edges = set()
    top = -1
    for pair in pairs:
        u, v = int(pair[0]), int(pair[1])
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex id in edge ({u}, {v})")
        edges.add((u, v))
        top = max(top, u, v)
    return DirectedGraph(top + 1, frozenset(edges))


def _require_edge(g: DirectedGraph, e: Edge) -> tuple[int, int]:
    u, v = e
    if (u, v) not in g.edges:
        raise MissingEdgeError(f"edge ({u}, {v}) not in graph")
    return u, v


def flip(g: DirectedGraph, e: Edge) -> DirectedGraph:
    u, v = _require_edge(g, e)
    if u == v:
        raise GraphError(f"cannot flip self-loop ({u}, {u})")
    if (v, u) in g.edges:
        raise GraphError(f"flipping ({u}, {v}) would duplicate ({v}, {u})")
    return DirectedGraph(g.vertex_count, (g.edges - {(u, v)}) | {(v, u)})


# --------------------------------------------------------------------------
# merge plans and quotients


class DisjointSet:
    """Union-find keyed by arbitrary hashables; roots are the smallest member."""

    def __init__(self, items: Iterable = ()):
        self.parent: dict = {}
        for x in items:
            self.parent[x] = x

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra

    def groups(self) -> list[frozenset]:
        by_root: dict = {}
        for x in self.parent:
            by_root.setdefault(self.find(x), set()).add(x)
        return sorted((frozenset(s) for s in by_root.values()), key=min)


@dataclass(frozen=True)
class MergePlan:
    """Disjoint groups of vertex ids; each group collapses onto its smallest id."""

    classes: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for c in self.classes:
            if not c:
                raise GraphError("merge classes must be non-empty")
            if seen & c:
                raise GraphError(f"merge classes overlap on {sorted(seen & c)}")
            seen |= c

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[int]]) -> "MergePlan":
        """Build a plan from possibly overlapping groups (transitively closed)."""
        ds = DisjointSet()
        for group in groups:
            group = list(group)
            if not group:
                continue
            ds.find(group[0])
            for x in group[1:]:
                ds.union(group[0], x)
        return cls(tuple(ds.groups()))

    def representative_map(self) -> dict[int, int]:
        return {x: min(c) for c in self.classes for x in c}


def identify(g: DirectedGraph, plan: MergePlan) -> tuple[DirectedGraph, dict[int, int]]:
    """Quotient ``g`` by ``plan``.

    Returns the quotient and the old id -> new id map. Ids are compacted in
    order of their representatives. Edges whose endpoints merge become
    self-loops and are kept.
    """
    rep = {v: v for v in range(g.vertex_count)}
    for c in plan.classes:
        r = min(c)
        for x in c:
            if not 0 <= x < g.vertex_count:
                raise GraphError(f"merge plan names unknown vertex {x}")
            rep[x] = r
    survivors = sorted(set(rep.values()))
    compact = {r: i for i, r in enumerate(survivors)}
    old_to_new = {v: compact[rep[v]] for v in range(g.vertex_count)}
    edges = frozenset((old_to_new[u], old_to_new[v]) for u, v in g.edges)
    return DirectedGraph(len(survivors), edges), old_to_new


class Quotient:
    """Mutable quotient of a graph under successive vertex merges.

    Representatives are original ids (the smallest of each merged group), so
    callers can interleave merges with distance and blocking queries without
    recompacting ids.
    """

    def __init__(self, g: DirectedGraph):
        self.sets = DisjointSet(range(g.vertex_count))
        self.succ = {v: set(s) for v, s in enumerate(g.succ)}
        self.pred = {v: set(p) for v, p in enumerate(g.pred)}
        self.nb = {v: set(n) for v, n in enumerate(g.neighbors)}

    def find(self, v: int) -> int:
        return self.sets.find(v)

    def merge(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        keep = self.sets.union(ra, rb)
        gone = rb if keep == ra else ra
        for w in self.succ.pop(gone):
            self.pred[w].discard(gone)
            w = keep if w == gone else w
            self.succ[keep].add(w)
            self.pred[w].add(keep)
        for w in self.pred.pop(gone):
            if w == gone:
                continue
            self.succ[w].discard(gone)
            self.succ[w].add(keep)
            self.pred[keep].add(w)
        for w in self.nb.pop(gone):
            self.nb[w].discard(gone)
            if w != keep:
                self.nb[w].add(keep)
                self.nb[keep].add(w)
        return keep

    def to_graph(self) -> tuple[DirectedGraph, dict[int, int]]:
        """Compact into a :class:`DirectedGraph`; returns it with the old -> new map."""
        survivors = sorted(self.succ)
        compact = {r: i for i, r in enumerate(survivors)}
        edges = frozenset(
            (compact[u], compact[v]) for u, out in self.succ.items() for v in out
        )
        old_to_new = {v: compact[self.find(v)] for v in self.sets.parent}
        return DirectedGraph(len(survivors), edges), old_to_new


def induced_without(g: DirectedGraph, removed: Iterable[int]) -> tuple[DirectedGraph, dict[int, int]]:
    """Delete vertices and their incident edges, compacting the remaining ids."""
    gone = set(removed)
    keep = [v for v in range(g.vertex_count) if v not in gone]
    compact = {v: i for i, v in enumerate(keep)}
    edges = frozenset(
        (compact[u], compact[v]) for u, v in g.edges if u in compact and v in compact
    )
    return DirectedGraph(len(keep), edges), compact


# --------------------------------------------------------------------------
# counting


def block_count(g: DirectedGraph, e: Edge) -> int:
    """Number of two-step detours ``a -> c -> b`` for the edge ``(a, b)``.

    This is exactly the ``(a, b)`` entry of the squared adjacency matrix.
    """
    a, b = _require_edge(g, e)
    return len(g.succ[a] & g.pred[b])


def is_blocked(g: DirectedGraph, e: Edge) -> bool:
    return block_count(g, e) >= 1


def cycles_through(g: DirectedGraph, e: Edge) -> int:
    """Number of directed 3-cycles using the edge ``(a, b)``."""
    a, b = _require_edge(g, e)
    return len((g.succ[b] & g.pred[a]) - {a, b})


def flip_delta(g: DirectedGraph, e: Edge) -> int:
    """Change in the 3-cycle count caused by flipping ``e`` in an oriented graph.

    Flipping ``(a, b)`` destroys every cycle ``a -> b -> c -> a`` and turns
    every detour ``a -> c -> b`` into a cycle.
    """
    a, b = _require_edge(g, e)
    created = len((g.succ[a] & g.pred[b]) - {a, b})
    return created - cycles_through(g, e)


def count_3cycles(g: DirectedGraph) -> int:
    """Number of vertex triples that carry a directed 3-cycle."""
    succ, pred = g.succ, g.pred
    if g.is_oriented():
        total = 0
        for u, v in g.edges:
            if u != v:
                total += len((succ[v] & pred[u]) - {u, v})
        return total // 3
    triples = set()
    for u, v in g.edges:
        if u == v:
            continue
        for w in succ[v] & pred[u]:
            if w != u and w != v:
                triples.add(frozenset((u, v, w)))
    return len(triples)


def count_3cycles_dense(g: DirectedGraph) -> int:
    """``trace(A^3) / 3``; equals :func:`count_3cycles` on simple oriented graphs."""
    a = g.adjacency_matrix()
    return int(round(np.trace(a @ a @ a))) // 3


def alpha(g: DirectedGraph, e: Edge) -> int:
    """Number of 3-cliques (cycles or simplices) containing the edge ``e``."""
    a, b = _require_edge(g, e)
    nb = g.neighbors
    return len((nb[a] & nb[b]) - {a, b})


def alpha_values(g: DirectedGraph) -> dict[Edge, int]:
    nb = g.neighbors
    return {(a, b): len((nb[a] & nb[b]) - {a, b}) for a, b in g.edges}


def alpha_avg(g: DirectedGraph) -> Fraction:
    if not g.edges:
        return Fraction(0)
    return Fraction(sum(alpha_values(g).values()), g.edge_count)


def alpha_max(g: DirectedGraph) -> int:
    return max(alpha_values(g).values(), default=0)


# --------------------------------------------------------------------------
# undirected distances


def _check_vertex(g: DirectedGraph, v: int) -> None:
    if not 0 <= v < g.vertex_count:
        raise GraphError(f"vertex {v} out of range for {g.vertex_count} vertices")


def bfs_distances(g: DirectedGraph, source: int, cutoff: int | None = None) -> dict[int, int]:
    """Undirected hop distances from ``source``, optionally truncated at ``cutoff``."""
    _check_vertex(g, source)
    nb = g.neighbors
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if cutoff is not None and du >= cutoff:
            continue
        for w in nb[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def _nearest_labels(nb, members: Sequence[int], limit: int) -> tuple[int, int, int] | None:
    """Multi-source BFS to radius ``limit // 2``; best cross-label edge below ``limit``."""
    radius = limit // 2
    dist = {m: 0 for m in members}
    label = {m: m for m in members}
    queue = deque(members)
    best = None
    while queue:
        u = queue.popleft()
        du, lu = dist[u], label[u]
        for w in nb[u]:
            if w in dist:
                if label[w] != lu:
                    d = du + dist[w] + 1
                    if d < limit and (best is None or d < best[0]):
                        a, b = sorted((lu, label[w]))
                        best = (d, a, b)
            elif du < radius:
                dist[w] = du + 1
                label[w] = lu
                queue.append(w)
    return best


def _hop_distance(nb, u: int, v: int) -> int | None:
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for w in nb[x]:
            if w not in dist:
                if w == v:
                    return dist[x] + 1
                dist[w] = dist[x] + 1
                queue.append(w)
    return None


def closest_pair_in(nb, members: Iterable[int], limit: int) -> tuple[int, int, int] | None:
    """:func:`closest_pair` over a raw neighbour mapping ``vertex -> set``."""
    members = sorted(set(members))
    if len(members) < 2:
        return None
    hit = _nearest_labels(nb, members, limit)
    if hit is None:
        return None
    _, a, b = hit
    return _hop_distance(nb, a, b), a, b


def closest_pair(
    g: DirectedGraph, members: Iterable[int], limit: int
) -> tuple[int, int, int] | None:
    """Find two members at undirected distance below ``limit``.

    One multi-source BFS truncated at radius ``limit // 2``: any pair closer
    than ``limit`` shows up as an edge between two differently labelled
    regions. Returns ``(distance, a, b)`` or ``None`` when every pairwise
    distance is at least ``limit``.
    """
    members = list(members)
    for m in members:
        _check_vertex(g, m)
    return closest_pair_in(g.neighbors, members, limit)


def undirected_distance(g: DirectedGraph, u: int, v: int) -> int | None:
    """Shortest hop count ignoring orientation; ``None`` if unreachable."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    return _hop_distance(g.neighbors, u, v)
