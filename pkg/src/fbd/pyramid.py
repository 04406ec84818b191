"""Recursive multi-pyramid construction, the leaf fold, and the trims.

Tree nodes are addressed by strings over ``{"L", "R"}`` (the root is ``""``).
Every node owns a base 4-cycle ``alpha -> beta -> gamma -> delta -> alpha``.
A child shares its alpha corner with the parent: ``xL.alpha == x.beta`` and
``xR.alpha == x.delta``. The parent's alpha and gamma corners are the two
tips of each child, oriented so that the parent base edges at the shared
corner become tip edges of the child:

* ``xL``: source tip ``x.alpha``, sink tip ``x.gamma``
* ``xR``: source tip ``x.gamma``, sink tip ``x.alpha``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from itertools import product
from typing import Iterator, NamedTuple

from .graph import (
    DirectedGraph,
    GraphError,
    MergePlan,
    Quotient,
    bfs_distances,
    closest_pair,
    closest_pair_in,
    identify,
    induced_without,
)


class Corner(IntEnum):
    ALPHA = 0
    BETA = 1
    GAMMA = 2
    DELTA = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Corner":
        return cls[text.strip().upper()]


class VertexName(NamedTuple):
    address: str
    corner: Corner

    def canonical(self) -> "VertexName":
        if self.address and self.corner == Corner.ALPHA:
            parent, step = self.address[:-1], self.address[-1]
            return VertexName(parent, Corner.BETA if step == "L" else Corner.DELTA)
        return self

    def __str__(self) -> str:
        return f"{self.address or '.'}{self.corner.label}"


def addresses(depth: int) -> Iterator[str]:
    """All tree addresses of level 0..depth, level by level."""
    for level in range(depth + 1):
        for steps in product("LR", repeat=level):
            yield "".join(steps)


def canonical_names(depth: int) -> list[VertexName]:
    names = []
    for x in addresses(depth):
        corners = Corner if not x else (Corner.BETA, Corner.GAMMA, Corner.DELTA)
        names.extend(VertexName(x, c) for c in corners)
    return sorted(names)


def tips(address: str) -> tuple[VertexName, VertexName]:
    """``(source, sink)`` tips of a non-root node."""
    if not address:
        raise GraphError("the root carries no tips")
    parent, step = address[:-1], address[-1]
    a, g = VertexName(parent, Corner.ALPHA).canonical(), VertexName(parent, Corner.GAMMA)
    return (a, g) if step == "L" else (g, a)


@dataclass(frozen=True)
class PyramidGraph:
    graph: DirectedGraph
    names: dict[VertexName, int] = field(repr=False)
    depth: int

    def vertex(self, address: str, corner: Corner | str) -> int:
        if isinstance(corner, str):
            corner = Corner.parse(corner)
        return self.names[VertexName(address, corner).canonical()]

    def name_of(self, vertex: int) -> VertexName:
        """Shallowest canonical name mapped to ``vertex``."""
        return min(
            (n for n, v in self.names.items() if v == vertex),
            key=lambda n: (len(n.address), n),
        )

    def name_lines(self) -> list[str]:
        """Sidecar rows ``address,corner,id`` in name order."""
        return [f"{n.address},{n.corner.label},{v}" for n, v in sorted(self.names.items())]


def pyramid_edges(depth: int) -> Iterator[tuple[VertexName, VertexName]]:
    """Named edges of the pre-fold tree, duplicates included."""
    for x in addresses(depth):
        corners = [VertexName(x, c).canonical() for c in Corner]
        for i in range(4):
            yield corners[i], corners[(i + 1) % 4]
        if x:
            source, sink = tips(x)
            for c in corners:
                yield source, c
                yield c, sink


def build_tree(depth: int) -> PyramidGraph:
    if depth < 0:
        raise GraphError("depth must be nonnegative")
    names = {n: i for i, n in enumerate(canonical_names(depth))}
    edges = frozenset((names[u], names[v]) for u, v in pyramid_edges(depth))
    return PyramidGraph(DirectedGraph(len(names), edges), names, depth)


def expected_tree_size(depth: int) -> tuple[int, int]:
    """Closed-form ``(vertices, edges)`` of :func:`build_tree`."""
    non_root = 2 ** (depth + 1) - 2
    return 4 + 3 * non_root, 4 + 10 * non_root


# --------------------------------------------------------------------------
# the fold

SUFFIXES = ("LL", "LR", "RL", "RR")


def fold_classes(depth: int) -> dict[tuple[str, Corner], list[VertexName]]:
    """Name groups merged by the fold, keyed by ``(suffix, corner)``.

    Every leaf ``x + suffix`` (``x`` ranging over level ``depth - 2``) has its
    corners identified with the matching corners of the level-2 node
    ``suffix``. The target name comes first in each group.
    """
    if depth < 2:
        raise GraphError("the fold needs depth >= 2")
    prefixes = ["".join(p) for p in product("LR", repeat=depth - 2)]
    groups = {}
    for suffix in SUFFIXES:
        for corner in Corner:
            target = VertexName(suffix, corner).canonical()
            members = [target]
            for x in prefixes:
                leaf = VertexName(x + suffix, corner).canonical()
                if leaf != target:
                    members.append(leaf)
            groups[(suffix, corner)] = members
    return groups


@dataclass(frozen=True)
class FoldPlan(MergePlan):
    """Merge plan that also records how the fold is applied one leaf at a time.

    Each unit identifies the four corners of one leaf base with the four
    corners of its level-2 target at once.
    """

    units: tuple[tuple[frozenset[int], ...], ...] = ()


def fold_plan(depth: int, tree: PyramidGraph | None = None) -> FoldPlan:
    """The fold as a merge plan on the ids of ``build_tree(depth)``.

    Classes are ordered by ``(suffix, corner)``; units by ``(suffix, leaf)``.
    At depth 3 a leaf's parent is itself a target, the groups overlap and are
    closed transitively; the quotient then carries self-loops for the
    verifier to report.
    """
    if tree is None:
        tree = build_tree(depth)
    elif tree.depth != depth:
        raise GraphError(f"tree has depth {tree.depth}, plan wants {depth}")
    groups = fold_classes(depth)
    classes = [frozenset(tree.names[n] for n in members) for members in groups.values()]
    if sum(map(len, classes)) != len(frozenset().union(*classes)):
        classes = list(MergePlan.from_groups(classes).classes)
    prefixes = ["".join(p) for p in product("LR", repeat=depth - 2)]
    units = []
    for suffix in SUFFIXES:
        for x in prefixes:
            if x + suffix == suffix:
                continue
            units.append(tuple(
                frozenset((tree.names[VertexName(x + suffix, c).canonical()],
                           tree.names[VertexName(suffix, c).canonical()]))
                for c in Corner
            ))
    return FoldPlan(tuple(classes), tuple(units))


@dataclass(frozen=True)
class PlanCheck:
    ok: bool
    pair: tuple[int, int] | None = None
    distance: int | None = None
    step: int | None = None  # merge steps already applied when the check failed

    def __bool__(self) -> bool:
        return self.ok


def validate_plan(
    g: DirectedGraph | PyramidGraph,
    plan: MergePlan,
    mode: str = "static",
    min_distance: int = 4,
) -> PlanCheck:
    """Check that every merged pair is at least ``min_distance`` apart.

    ``static`` measures every intra-class distance in ``g``. ``sequential``
    applies the plan step by step and measures each step's pairs in the
    current quotient right before applying it. Distances never grow under
    merges, so this is the binding moment for every later step as well.
    The steps are the plan's ``units`` when it has them (a whole leaf base
    per step for the fold) and one class per step otherwise.

    Offending pairs are reported as ids of ``g``.
    """
    if isinstance(g, PyramidGraph):
        g = g.graph
    if mode not in ("static", "sequential"):
        raise ValueError(f"unknown mode {mode!r}")
    for c in plan.classes:
        for v in c:
            if not 0 <= v < g.vertex_count:
                raise GraphError(f"merge plan names unknown vertex {v}")
    if mode == "static":
        for c in plan.classes:
            hit = closest_pair(g, c, min_distance)
            if hit is not None:
                return PlanCheck(False, (hit[1], hit[2]), hit[0], 0)
        return PlanCheck(True)

    steps = getattr(plan, "units", ()) or tuple((c,) for c in plan.classes)
    q = Quotient(g)
    for step, unit in enumerate(steps):
        for group in unit:
            images: dict[int, int] = {}
            for v in sorted(group):
                w = q.find(v)
                if w in images:
                    return PlanCheck(False, (images[w], v), 0, step)
                images[w] = v
            hit = closest_pair_in(q.nb, images, min_distance)
            if hit is not None:
                d, a, b = hit
                return PlanCheck(False, (images[a], images[b]), d, step)
        for group in unit:
            first, *rest = sorted(group)
            for v in rest:
                q.merge(first, v)
    return PlanCheck(True)


def build_fbd(depth: int = 10) -> PyramidGraph:
    """Build the tree, apply the fold and return the quotient with merged names."""
    tree = build_tree(depth)
    plan = fold_plan(depth, tree)
    quotient, old_to_new = identify(tree.graph, plan)
    names = {n: old_to_new[v] for n, v in tree.names.items()}
    return PyramidGraph(quotient, names, depth)


# --------------------------------------------------------------------------
# trims and minimization

TRIMMED = (
    VertexName("", Corner.ALPHA),
    VertexName("", Corner.BETA),
    VertexName("", Corner.GAMMA),
    VertexName("", Corner.DELTA),
    VertexName("L", Corner.GAMMA),
    VertexName("R", Corner.GAMMA),
)


def trim_levels01(p: PyramidGraph) -> PyramidGraph:
    """Remove the root base and the gamma corners of both level-1 nodes."""
    if p.depth < 3:
        raise GraphError("trimming needs a folded graph of depth >= 3")
    missing = [str(n) for n in TRIMMED if n not in p.names]
    if missing:
        raise GraphError(f"names already absent, nothing to trim: {', '.join(missing)}")
    doomed = {p.names[n] for n in TRIMMED}
    rest, compact = induced_without(p.graph, doomed)
    names = {n: compact[v] for n, v in p.names.items() if v in compact}
    return PyramidGraph(rest, names, p.depth)


def _merge_keeps_fbd(q: Quotient, a: int, b: int) -> bool:
    """Whether merging ``a`` and ``b`` keeps an FBD quotient FBD.

    Every new loop, 2-cycle or 3-cycle passes through the merged vertex, and
    an edge away from it keeps its detours (they only get renamed), so only
    the merged vertex's own edges need checking.
    """
    ra, rb = q.find(a), q.find(b)
    if ra == rb:
        return False
    r = min(ra, rb)

    def image(x: int) -> int:
        return r if x == ra or x == rb else x

    out = {image(x) for x in q.succ[ra] | q.succ[rb]}
    inc = {image(x) for x in q.pred[ra] | q.pred[rb]}
    if r in out or out & inc:
        return False
    for w in out:
        w_out = {image(x) for x in q.succ[w]}
        if w_out & inc:  # r -> w -> y -> r
            return False
        if not out & {image(x) for x in q.pred[w]}:  # (r, w) needs r -> c -> w
            return False
    for w in inc:
        if not {image(x) for x in q.succ[w]} & inc:  # (w, r) needs w -> c -> r
            return False
    return True


def distance_merge_plan(g: DirectedGraph, min_distance: int = 5) -> MergePlan:
    """Greedy merges of far-apart vertex pairs that keep ``g`` FBD.

    Candidates are the pairs at undirected distance ``>= min_distance`` in
    ``g`` itself, scanned in ascending ``(u, v)`` order; a pair is merged when
    its current groups differ and the quotient stays FBD. Passes repeat until
    nothing merges.
    """
    from .verify import verify_fbd

    if not verify_fbd(g).is_fbd:
        raise GraphError("distance minimization needs an FBD input")
    n = g.vertex_count
    candidates = []
    for u in range(n):
        near = bfs_distances(g, u, cutoff=min_distance - 1)
        candidates.extend((u, v) for v in range(u + 1, n) if v not in near)
    q = Quotient(g)
    merged = True
    while merged:
        merged = False
        for u, v in candidates:
            if q.find(u) != q.find(v) and _merge_keeps_fbd(q, u, v):
                q.merge(u, v)
                merged = True
    return MergePlan(tuple(c for c in q.sets.groups() if len(c) > 1))


def distance5_minimize(g: DirectedGraph, min_distance: int = 5) -> DirectedGraph:
    """Shrink an FBD graph by merging vertex pairs at distance ``>= 5``."""
    from .verify import verify_fbd

    plan = distance_merge_plan(g, min_distance)
    out, _ = identify(g, plan)
    report = verify_fbd(out)
    if not report.is_fbd:  # the local gate is exact, so this is a bug
        raise AssertionError(f"minimization broke FBD: {report}")
    return out
