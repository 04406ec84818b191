import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import digraphs, oriented_graphs, random_oriented
from fbd.graph import (
    DirectedGraph,
    DisjointSet,
    GraphError,
    MergePlan,
    MissingEdgeError,
    Quotient,
    alpha,
    alpha_avg,
    alpha_max,
    block_count,
    closest_pair,
    count_3cycles,
    count_3cycles_dense,
    cycles_through,
    flip,
    flip_delta,
    from_edge_list,
    identify,
    induced_without,
    undirected_distance,
)

TRIANGLE = from_edge_list([(0, 1), (1, 2), (2, 0)])
SIMPLEX = from_edge_list([(0, 1), (1, 2), (0, 2)])
# a=0, b=1, c=2 with the detour a -> c -> b
BLOCKED = from_edge_list([(0, 1), (0, 2), (2, 1)])


# independent oracles


def brute_3cycles(g):
    e = g.edges
    count = 0
    for a, b, c in itertools.combinations(range(g.vertex_count), 3):
        if {(a, b), (b, c), (c, a)} <= e or {(a, c), (c, b), (b, a)} <= e:
            count += 1
    return count


def brute_two_paths(g, a, b):
    return sum(1 for c in range(g.vertex_count) if (a, c) in g.edges and (c, b) in g.edges)


def brute_alpha(g, a, b):
    def adj(x, y):
        return (x, y) in g.edges or (y, x) in g.edges

    return sum(
        1 for c in range(g.vertex_count) if c not in (a, b) and adj(a, c) and adj(b, c)
    )


def floyd_warshall(g):
    n = g.vertex_count
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in g.edges:
        if u != v:
            d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


# construction


def test_from_edge_list_basics():
    assert (TRIANGLE.vertex_count, TRIANGLE.edge_count) == (3, 3)
    assert from_edge_list([(0, 1), (0, 1)]).edge_count == 1
    assert from_edge_list([]).vertex_count == 0
    assert from_edge_list([(5, 2)]).vertex_count == 6


def test_from_edge_list_rejects_negative_ids():
    with pytest.raises(GraphError):
        from_edge_list([(0, -1)])


def test_out_of_range_edge_rejected():
    with pytest.raises(GraphError):
        DirectedGraph(2, frozenset({(0, 2)}))


def test_predicates():
    assert TRIANGLE.is_simple() and TRIANGLE.is_oriented()
    assert not from_edge_list([(0, 0)]).is_simple()
    assert not from_edge_list([(0, 1), (1, 0)]).is_oriented()


# flips


def test_flip_is_involution():
    g = flip(TRIANGLE, (0, 1))
    assert flip(g, (1, 0)) == TRIANGLE
    assert TRIANGLE.has_edge(0, 1)  # unchanged


def test_flip_blocked_edge_creates_cycle():
    assert count_3cycles(BLOCKED) == 0
    assert count_3cycles(flip(BLOCKED, (0, 1))) == 1


def test_flip_breaks_cycle():
    assert count_3cycles(flip(TRIANGLE, (0, 1))) == 0


def test_flip_errors():
    with pytest.raises(MissingEdgeError):
        flip(TRIANGLE, (1, 0))
    with pytest.raises(GraphError):
        flip(from_edge_list([(0, 1), (1, 0)]), (0, 1))


@given(oriented_graphs(), st.data())
def test_flip_involution_property(g, data):
    if not g.edges:
        return
    e = data.draw(st.sampled_from(g.sorted_edges()))
    assert flip(flip(g, e), (e[1], e[0])) == g


@given(oriented_graphs(), st.data())
def test_flip_delta_matches_recount(g, data):
    if not g.edges:
        return
    e = data.draw(st.sampled_from(g.sorted_edges()))
    assert flip_delta(g, e) == count_3cycles(flip(g, e)) - count_3cycles(g)


# identification


def test_identify_distance_two_makes_two_cycle():
    path = from_edge_list([(0, 1), (1, 2)])
    q, m = identify(path, MergePlan((frozenset({0, 2}),)))
    assert q.vertex_count == 2
    assert q.edges == {(0, 1), (1, 0)}
    assert not q.is_oriented()
    assert m == {0: 0, 1: 1, 2: 0}


def test_identify_distance_four_makes_four_cycle():
    path = from_edge_list([(0, 1), (1, 2), (2, 3), (3, 4)])
    q, _ = identify(path, MergePlan((frozenset({0, 4}),)))
    assert q.vertex_count == 4 and q.edge_count == 4
    assert q.is_simple() and q.is_oriented()
    assert count_3cycles(q) == 0


def test_identify_deduplicates_parallel_edges():
    g = from_edge_list([(0, 1), (2, 3)])
    q, _ = identify(g, MergePlan((frozenset({0, 2}), frozenset({1, 3}))))
    assert q.edges == {(0, 1)}


def test_identify_keeps_self_loops():
    q, _ = identify(from_edge_list([(0, 1)]), MergePlan((frozenset({0, 1}),)))
    assert q.edges == {(0, 0)}
    assert not q.is_simple()


def test_identify_unknown_id():
    with pytest.raises(GraphError):
        identify(TRIANGLE, MergePlan((frozenset({0, 7}),)))


def test_merge_plan_rules():
    with pytest.raises(GraphError):
        MergePlan((frozenset({0, 1}), frozenset({1, 2})))
    with pytest.raises(GraphError):
        MergePlan((frozenset(),))
    plan = MergePlan.from_groups([[3, 1], [1, 5], [7, 8]])
    assert plan.classes == (frozenset({1, 3, 5}), frozenset({7, 8}))
    assert plan.representative_map()[5] == 1


@given(oriented_graphs())
def test_identify_singletons_is_identity(g):
    plan = MergePlan(tuple(frozenset({v}) for v in range(g.vertex_count)))
    q, m = identify(g, plan)
    assert q == g
    assert m == {v: v for v in range(g.vertex_count)}


@given(digraphs(), st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=5))
def test_quotient_merges_agree_with_identify(g, pairs):
    pairs = [(a % g.vertex_count, b % g.vertex_count) for a, b in pairs]
    q = Quotient(g)
    for a, b in pairs:
        q.merge(a, b)
    got, _ = q.to_graph()
    want, _ = identify(g, MergePlan.from_groups([list(p) for p in pairs]))
    assert got == want
    for v, nb in q.nb.items():
        assert nb == {q.find(w) for w in nb}


def test_disjoint_set_smallest_root():
    ds = DisjointSet(range(5))
    ds.union(4, 2)
    ds.union(2, 3)
    assert ds.find(3) == 2 and ds.find(4) == 2
    assert ds.groups() == [frozenset({0}), frozenset({1}), frozenset({2, 3, 4})]


def test_induced_without():
    g, m = induced_without(from_edge_list([(0, 1), (1, 2), (2, 3)]), [1])
    assert g.edges == {(1, 2)} and m == {0: 0, 2: 1, 3: 2}


# counting


def test_count_3cycles_examples():
    assert count_3cycles(TRIANGLE) == 1
    assert count_3cycles(SIMPLEX) == 0
    assert count_3cycles_dense(TRIANGLE) == 1


def test_count_3cycles_counts_triples_once_in_non_oriented_graphs():
    both = from_edge_list([(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)])
    assert count_3cycles(both) == 1 == brute_3cycles(both)


@given(digraphs())
def test_count_3cycles_matches_brute_force(g):
    assert count_3cycles(g) == brute_3cycles(g)


@settings(max_examples=60)
@given(oriented_graphs(max_vertices=12))
def test_sparse_and_dense_cycle_counts_agree(g):
    assert count_3cycles(g) == count_3cycles_dense(g)


def test_block_count_examples():
    assert block_count(BLOCKED, (0, 1)) == 1
    assert block_count(BLOCKED, (0, 2)) == 0
    assert block_count(BLOCKED, (2, 1)) == 0
    with pytest.raises(MissingEdgeError):
        block_count(BLOCKED, (1, 0))


@given(digraphs())
def test_block_count_is_square_entry(g):
    a = g.adjacency_matrix()
    aa = a @ a
    for u, v in g.edges:
        assert block_count(g, (u, v)) == brute_two_paths(g, u, v) == int(aa[u, v])


@given(oriented_graphs())
def test_cycles_through_sums_to_three_per_cycle(g):
    assert sum(cycles_through(g, e) for e in g.edges) == 3 * count_3cycles(g)


def test_alpha_examples():
    assert [alpha(SIMPLEX, e) for e in SIMPLEX.sorted_edges()] == [1, 1, 1]
    path = from_edge_list([(0, 1), (1, 2)])
    assert alpha(path, (0, 1)) == 0
    assert alpha_avg(SIMPLEX) == 1 and alpha_max(SIMPLEX) == 1
    assert alpha_avg(DirectedGraph(3)) == 0


@given(digraphs())
def test_alpha_matches_brute_force(g):
    for u, v in g.edges:
        if u != v:
            assert alpha(g, (u, v)) == brute_alpha(g, u, v)


@given(oriented_graphs(), st.data())
def test_alpha_profile_ignores_orientation(g, data):
    if not g.edges:
        return
    edges = data.draw(st.lists(st.sampled_from(g.sorted_edges()), unique=True))
    h = g
    for e in edges:
        h = flip(h, e)

    def profile(x):
        return sorted((min(e), max(e), alpha(x, e)) for e in x.edges)

    assert profile(h) == profile(g)


# distances


def test_undirected_distance_examples():
    g = from_edge_list([(0, 1), (2, 1), (3, 4)])
    assert undirected_distance(g, 0, 1) == 1
    assert undirected_distance(g, 0, 2) == 2
    assert undirected_distance(g, 0, 0) == 0
    assert undirected_distance(g, 0, 3) is None
    with pytest.raises(GraphError):
        undirected_distance(g, 0, 9)


@given(oriented_graphs(max_vertices=8))
def test_distance_matches_floyd_warshall(g):
    d = floyd_warshall(g)
    for u in range(g.vertex_count):
        for v in range(g.vertex_count):
            got = undirected_distance(g, u, v)
            assert got == (None if d[u][v] == float("inf") else d[u][v])


@given(oriented_graphs(max_vertices=8))
def test_distance_symmetric_and_triangle_inequality(g):
    n = g.vertex_count
    for u, v, w in itertools.product(range(n), repeat=3):
        duv, dvw, duw = (undirected_distance(g, *p) for p in ((u, v), (v, w), (u, w)))
        assert duv == undirected_distance(g, v, u)
        if duv is not None and dvw is not None:
            assert duw is not None and duw <= duv + dvw


@given(oriented_graphs(max_vertices=9), st.data(), st.integers(2, 6))
def test_closest_pair_matches_pairwise_scan(g, data, limit):
    if g.vertex_count < 2:
        return
    members = data.draw(st.sets(st.integers(0, g.vertex_count - 1), min_size=2))
    d = floyd_warshall(g)
    violating = [
        (a, b) for a, b in itertools.combinations(sorted(members), 2) if d[a][b] < limit
    ]
    hit = closest_pair(g, members, limit)
    if not violating:
        assert hit is None
    else:
        dist, a, b = hit
        assert (a, b) in violating and dist == d[a][b]


def test_dense_oracle_on_random_graphs(rng):
    for _ in range(50):
        g = random_oriented(rng.randint(3, 30), rng.random(), rng)
        a = g.adjacency_matrix()
        assert count_3cycles(g) * 3 == int(np.trace(a @ a @ a))
