from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from udgkit.graph import (
    BipartiteGraph,
    Graph,
    GraphError,
    U,
    W,
    are_isomorphic,
    bipartite_complement,
    chordless_cycles_up_to,
    complement,
    complete_bipartite,
    contains_induced,
    cycle_graph,
    disjoint_union,
    empty_graph,
    from_edge_list,
    induced_subgraph,
    is_induced_mapping,
    iter_induced,
    path_graph,
    pendant_twin_reduce,
    shortest_odd_cycle,
    star_op,
    two_coloring,
    two_connected_components,
)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_edge_list(n, chosen)


@st.composite
def bipartite_graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    part = tuple(draw(st.lists(st.sampled_from((U, W)), min_size=n, max_size=n)))
    cross = [(u, v) for u, v in itertools.combinations(range(n), 2) if part[u] != part[v]]
    chosen = draw(st.lists(st.sampled_from(cross), unique=True)) if cross else []
    return BipartiteGraph(from_edge_list(n, chosen), part)


# -- construction ---------------------------------------------------------


def test_c4_from_edge_list():
    g = from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.m == 4 and all(g.degree(v) == 2 for v in g)
    assert are_isomorphic(g, cycle_graph(4))


def test_k1_and_k16():
    assert from_edge_list(1, []).n == 1
    star = from_edge_list(7, [(0, i) for i in range(1, 7)])
    assert are_isomorphic(star, complete_bipartite(1, 6))


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(-1, 0)]])
def test_rejects_bad_edges(edges):
    with pytest.raises(GraphError):
        from_edge_list(3, edges)


def test_duplicate_edges_collapse():
    g = from_edge_list(3, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1


# -- complements and star -------------------------------------------------


def test_complement_small_cases():
    assert complement(empty_graph(1)).n == 1
    assert are_isomorphic(complement(cycle_graph(5)), cycle_graph(5))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=12))
def test_complement_matches_networkx_and_is_involution(g):
    c = complement(g)
    assert nx.utils.graphs_equal(to_nx(c), nx.complement(to_nx(g)))
    assert complement(c) == g


def test_bipartite_complement_of_k22_has_no_cross_edges():
    bip = BipartiteGraph(complete_bipartite(2, 2), (U, U, W, W))
    assert bipartite_complement(bip).cross_edges() == []


@settings(max_examples=60, deadline=None)
@given(bipartite_graphs())
def test_bipartite_complement_and_star_are_involutions(b):
    assert bipartite_complement(bipartite_complement(b)).graph == b.graph
    s = star_op(b)
    assert s.co and star_op(s).graph == b.graph
    assert sorted(s.cross_edges()) == sorted(b.cross_edges())


def test_star_of_c8_is_complement_of_c8():
    c8 = cycle_graph(8)
    assert are_isomorphic(star_op(BipartiteGraph(c8, two_coloring(c8))).graph, complement(c8))


def test_star_of_single_edge():
    b = BipartiteGraph(from_edge_list(2, [(0, 1)]), (U, W))
    assert star_op(b).graph == b.graph


def test_bipartite_complement_of_f1_is_f4():
    from udgkit.catalog import catalog_entry

    f1, f4 = catalog_entry("F1").graph, catalog_entry("F4").graph
    comp = bipartite_complement(BipartiteGraph(f1, two_coloring(f1)))
    assert are_isomorphic(comp.graph, f4)


def test_co_form_rejects_non_clique_part():
    with pytest.raises(GraphError):
        BipartiteGraph(empty_graph(2), (U, U), co=True)


# -- induced containment --------------------------------------------------


def test_c6_has_no_induced_c4():
    assert contains_induced(cycle_graph(6), cycle_graph(4)) is None


def test_k1_in_any_nonempty_host():
    assert contains_induced(path_graph(3), empty_graph(1)) is not None
    assert contains_induced(empty_graph(0), empty_graph(1)) is None


def test_complement_c8_contains_complement_p6():
    assert contains_induced(complement(cycle_graph(8)), complement(path_graph(6))) is not None


def _brute(host: Graph, pattern: Graph) -> bool:
    nh = to_nx(host)
    npat = to_nx(pattern)
    return any(nx.is_isomorphic(nh.subgraph(s), npat) for s in itertools.combinations(range(host.n), pattern.n))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8), graphs(max_n=5))
def test_contains_induced_matches_brute_force(host, pattern):
    got = contains_induced(host, pattern)
    assert (got is not None) == _brute(host, pattern)
    if got is not None:
        assert is_induced_mapping(host, pattern, got)


def test_iter_induced_counts_automorphic_copies():
    # C5 has 10 automorphisms
    assert sum(1 for _ in iter_induced(cycle_graph(5), cycle_graph(5))) == 10


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=10))
def test_isomorphism_agrees_with_networkx_under_relabel(g):
    perm = list(reversed(range(g.n)))
    h = from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert are_isomorphic(g, h)
    if g.n >= 2 and 0 < g.m < g.n * (g.n - 1) // 2:
        other = complement(g)
        assert are_isomorphic(g, other) == nx.is_isomorphic(to_nx(g), to_nx(other))


def test_induced_subgraph_keeps_order():
    sub, keep = induced_subgraph(cycle_graph(6), [5, 0, 1])
    assert keep == [0, 1, 5] and sub.m == 2


# -- cycles, blocks, colourings --------------------------------------------


def test_chordless_cycles_examples():
    assert [len(c) for c in chordless_cycles_up_to(cycle_graph(6), 12)] == [6]
    tree = from_edge_list(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert chordless_cycles_up_to(tree, 10) == []
    two_hex = from_edge_list(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
                                  (3, 6), (6, 7), (7, 8), (8, 9), (9, 4)])
    assert sorted(len(c) for c in chordless_cycles_up_to(two_hex, 10)) == [6, 6]


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8))
def test_chordless_cycles_match_networkx(g):
    ours = {frozenset(c) for c in chordless_cycles_up_to(g, max(g.n, 3))}
    theirs = {frozenset(c) for c in nx.chordless_cycles(to_nx(g)) if len(c) >= 4}
    assert {c for c in ours if len(c) >= 4} == theirs


def test_two_connected_components_examples():
    assert two_connected_components(cycle_graph(6)) == [frozenset(range(6))]
    assert len(two_connected_components(path_graph(4))) == 3
    pend = from_edge_list(7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6)])
    assert sorted(map(sorted, two_connected_components(pend))) == [[0, 1, 2, 3, 4, 5], [0, 6]]


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=10))
def test_blocks_match_networkx(g):
    ours = {frozenset(b) for b in two_connected_components(g)}
    theirs = {frozenset(b) for b in nx.biconnected_components(to_nx(g))}
    assert ours == theirs


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=10))
def test_two_coloring_and_odd_cycle(g):
    col = two_coloring(g)
    assert (col is not None) == nx.is_bipartite(to_nx(g))
    if col is not None:
        assert all(col[u] != col[v] for u, v in g.edges())
        assert shortest_odd_cycle(g) is None
    else:
        cyc = shortest_odd_cycle(g)
        assert len(cyc) % 2 == 1
        assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


# -- pendant twins ------------------------------------------------------------


def test_pendant_reduce_star():
    red, exp = pendant_twin_reduce(BipartiteGraph(complete_bipartite(1, 3), (U, W, W, W)))
    assert red.n == 2 and len(exp.collapsed) == 2


def test_pendant_reduce_no_twins_is_identity():
    p = path_graph(5)
    red, exp = pendant_twin_reduce(BipartiteGraph(p, two_coloring(p)))
    assert red.graph == p and exp.collapsed == {}


@settings(max_examples=60, deadline=None)
@given(bipartite_graphs(max_n=12))
def test_pendant_reduce_then_expand(b):
    red, exp = pendant_twin_reduce(b)
    g = b.graph
    # re-attach each collapsed pendant where its representative hangs
    edges = [(exp.kept[u], exp.kept[v]) for u, v in red.graph.edges()]
    for extra, rep in exp.collapsed.items():
        (hub,) = g.adjacency[rep]
        edges.append((extra, hub))
    assert from_edge_list(g.n, edges) == g


def test_disjoint_union_sizes():
    g = disjoint_union(cycle_graph(3), path_graph(2))
    assert (g.n, g.m) == (5, 4)
