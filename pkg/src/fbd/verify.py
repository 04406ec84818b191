"""Four-condition FBD check and edge-level metrics."""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .graph import DirectedGraph, Edge, alpha_values, count_3cycles


@dataclass(frozen=True)
class VerificationReport:
    vertex_count: int
    edge_count: int
    loop_count: int
    two_cycle_pairs: int
    three_cycle_count: int
    unblocked_edge_count: int
    alpha_avg: Fraction
    alpha_max: int

    @property
    def is_simple(self) -> bool:
        return self.loop_count == 0

    @property
    def is_oriented(self) -> bool:
        return self.two_cycle_pairs == 0

    @property
    def is_fbd(self) -> bool:
        return (
            self.loop_count == 0
            and self.two_cycle_pairs == 0
            and self.three_cycle_count == 0
            and self.unblocked_edge_count == 0
            and self.edge_count >= 1
        )

    def as_dict(self) -> dict:
        d = asdict(self)
        d["alpha_avg"] = f"{self.alpha_avg.numerator}/{self.alpha_avg.denominator}"
        d["is_fbd"] = self.is_fbd
        return d

    def transcript(self) -> str:
        """Line-by-line summary in the style of the reference checker script."""
        lines = [f"loaded {self.edge_count} edges"]
        checks = [
            (self.loop_count == 0, "tr A1 = 0", f"tr A1 = {self.loop_count}: graph is not simple"),
            (self.two_cycle_pairs == 0, "tr A2 = 0",
             f"tr A2 = {2 * self.two_cycle_pairs}: graph is not oriented"),
            (self.three_cycle_count == 0, "tr A3 = 0",
             f"tr A3 = {3 * self.three_cycle_count}: graph has 3-cycles"),
            (self.unblocked_edge_count == 0, "A <= A2",
             f"{self.unblocked_edge_count} unblocked edges: graph contains unblocked edges"),
        ]
        for ok, good, bad in checks:
            lines.append(good if ok else bad)
        if self.edge_count == 0:
            lines.append("graph has no edges")
        lines.append(f"alpha avg = {self.alpha_avg.numerator}/{self.alpha_avg.denominator}")
        lines.append(f"alpha max = {self.alpha_max}")
        if self.is_fbd:
            lines.append("all checks passed! graph is FBD")
        else:
            lines.append("checks failed: graph is not FBD")
        return "\n".join(lines)


def unblocked_edges(g: DirectedGraph) -> list[Edge]:
    succ, pred = g.succ, g.pred
    return sorted((a, b) for a, b in g.edges if not (succ[a] & pred[b]))


def verify_fbd(g: DirectedGraph) -> VerificationReport:
    """Run every check without short-circuiting, so failures are fully diagnosed."""
    loops = sum(1 for u, v in g.edges if u == v)
    pairs = sum(1 for u, v in g.edges if u < v and (v, u) in g.edges)
    alphas = alpha_values(g)
    avg = Fraction(sum(alphas.values()), len(alphas)) if alphas else Fraction(0)
    return VerificationReport(
        vertex_count=g.vertex_count,
        edge_count=g.edge_count,
        loop_count=loops,
        two_cycle_pairs=pairs,
        three_cycle_count=count_3cycles(g),
        unblocked_edge_count=len(unblocked_edges(g)),
        alpha_avg=avg,
        alpha_max=max(alphas.values(), default=0),
    )


def verify_fbd_dense(g: DirectedGraph) -> dict[str, int]:
    """Matrix-power version of the four checks.

    Kept deliberately literal: traces of A, A^2, A^3 and the element-wise
    comparison A^2 >= A. Only meaningful as a cross-check on graphs of a few
    thousand vertices.
    """
    a = g.adjacency_matrix()
    aa = a @ a
    aaa = aa @ a
    tr1 = int(round(np.trace(a)))
    tr2 = int(round(np.trace(aa)))
    tr3 = int(round(np.trace(aaa)))
    unblocked = int(np.count_nonzero((a > 0) & (aa < a)))
    return {
        "trace1": tr1,
        "trace2": tr2,
        "trace3": tr3,
        "unblocked": unblocked,
        "is_fbd": tr1 == 0 and tr2 == 0 and tr3 == 0 and unblocked == 0 and g.edge_count >= 1,
    }


@dataclass(frozen=True)
class Metrics:
    alpha: dict[Edge, int]
    histogram: dict[int, int]
    alpha_avg: Fraction
    alpha_max: int
    unblocked: list[Edge]
    block_histogram: dict[int, int]

    @property
    def blocked_count(self) -> int:
        return len(self.alpha) - len(self.unblocked)


def metrics(g: DirectedGraph) -> Metrics:
    alphas = alpha_values(g)
    succ, pred = g.succ, g.pred
    blocks = Counter(len(succ[a] & pred[b]) for a, b in g.edges)
    return Metrics(
        alpha=alphas,
        histogram=dict(sorted(Counter(alphas.values()).items())),
        alpha_avg=Fraction(sum(alphas.values()), len(alphas)) if alphas else Fraction(0),
        alpha_max=max(alphas.values(), default=0),
        unblocked=unblocked_edges(g),
        block_histogram=dict(sorted(blocks.items())),
    )
