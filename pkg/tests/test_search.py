from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from udgkit.catalog import catalog_entry, generate_family
from udgkit.graph import delete_vertex, complement, complete_bipartite, complete_graph, cycle_graph, from_edge_list, path_graph
from udgkit.search import (
    CONSTRUCTION,
    INCONCLUSIVE,
    SEARCH,
    SearchConfig,
    certify_udg,
    minimality_check,
    potential,
    potential_gradient,
    search_embedding,
)
from udgkit.verifier import verify_embedding

FAST = SearchConfig(restarts=3, iterations=400)


def test_triangle_is_found():
    res = search_embedding(complete_graph(3), FAST)
    assert res.method == SEARCH
    rep = verify_embedding(complete_graph(3), res.embedding, slack=0)
    assert rep.ok and rep.min_edge_slack >= 0


def test_complement_of_p7_is_found():
    g = complement(path_graph(7))
    res = search_embedding(g, SearchConfig(restarts=10, iterations=2000))
    assert res.method == SEARCH
    assert verify_embedding(g, res.embedding, slack=0).ok


def test_k23_is_inconclusive_not_negative():
    res = search_embedding(complete_bipartite(2, 3), FAST)
    assert res.method == INCONCLUSIVE and res.embedding is None
    assert res.potential > 0


def test_search_is_deterministic_per_seed():
    g = path_graph(4)
    a = search_embedding(g, SearchConfig(restarts=2, iterations=1000, seed=4))
    b = search_embedding(g, SearchConfig(restarts=2, iterations=1000, seed=4))
    assert a.method == SEARCH
    assert a.embedding.points == b.embedding.points and a.restart == b.restart


def test_empty_graph_and_size_cap():
    assert search_embedding(from_edge_list(0, [])).method == SEARCH
    with pytest.raises(ValueError, match="capped"):
        search_embedding(path_graph(20))


@pytest.mark.parametrize("kwargs", [
    {"restarts": 0}, {"iterations": 0}, {"step_initial": 0}, {"step_final": 1.0},
    {"target_slack": 0},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SearchConfig(**kwargs)


# -- potential --------------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10_000), st.floats(0.0, 0.1))
def test_potential_is_zero_iff_margins_hold(n, seed, delta):
    rng = np.random.default_rng(seed)
    pos = rng.uniform(0, 2, size=(n, 2))
    d = np.linalg.norm(pos[:, None] - pos[None], axis=2)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if d[i, j] <= 1]
    g = from_edge_list(n, edges)
    val = potential(pos, g, delta)
    tight = all(d[i, j] <= 1 - delta if g.has_edge(i, j) else d[i, j] >= 1 + delta
                for i in range(n) for j in range(i + 1, n))
    assert (val == 0.0) == tight


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_gradient_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    g = cycle_graph(5)
    pos = rng.uniform(0, 2, size=(5, 2))
    grad = potential_gradient(pos, g, 0.01)
    h = 1e-6
    for i in range(5):
        for k in range(2):
            e = np.zeros_like(pos)
            e[i, k] = h
            fd = (potential(pos + e, g, 0.01) - potential(pos - e, g, 0.01)) / (2 * h)
            assert math.isclose(grad[i, k], fd, abs_tol=1e-5)


# -- minimality --------------------------------------------------------------------------------------


def test_certify_prefers_constructions():
    cert = certify_udg(complement(path_graph(6)), FAST)
    assert cert.method == CONSTRUCTION and cert.ok
    cert = certify_udg(complement(cycle_graph(6)), FAST)
    assert cert.method == CONSTRUCTION and cert.ok
    assert certify_udg(cycle_graph(5), FAST).detail == "circle-k2"
    # not co-bipartite: only the search applies
    assert certify_udg(cycle_graph(6), SearchConfig(restarts=10, iterations=2000)).method == SEARCH


def test_minimality_of_co_even_cycle():
    certs = minimality_check(generate_family("co-even-cycle", 4), FAST)
    assert len(certs) == 8
    assert all(c.ok and c.method == CONSTRUCTION for c in certs)
    assert [c.vertex for c in certs] == list(range(8))


def test_minimality_of_k23_uses_constructions():
    certs = minimality_check(complete_bipartite(2, 3), FAST)
    assert all(c.ok for c in certs)


def test_minimality_of_starred_seed():
    g = generate_family("star-even-cycle", 5)
    certs = minimality_check(g, FAST)
    assert all(c.ok and c.method == CONSTRUCTION for c in certs)


def test_certificate_dict():
    cert = certify_udg(complement(path_graph(4)), FAST)
    d = cert.to_dict()
    assert d["ok"] and d["method"] == CONSTRUCTION and isinstance(d["min_nonedge_margin"], float)


def test_unreachable_graph_is_inconclusive():
    # K1,6 is not a unit disk graph and no construction covers it
    cert = certify_udg(catalog_entry("K1,6").graph, SearchConfig(restarts=1, iterations=50))
    assert cert.method == INCONCLUSIVE and not cert.ok


# Evidence only, not proof: non-realizability has no finite certificate here, so
# for the small fixed obstructions the search is expected to miss on the graph
# itself while every one-vertex deletion is certified.
@pytest.mark.parametrize("name", ["G1", "G3", "G4", "G5"])
def test_small_obstructions_evidence(name):
    cfg = SearchConfig(restarts=4, iterations=1000)
    g = catalog_entry(name).graph
    assert certify_udg(g, cfg).method == INCONCLUSIVE
    certs = minimality_check(g, cfg)
    assert all(c.ok for c in certs)
    for c in certs:
        assert verify_embedding(delete_vertex(g, c.vertex), c.embedding).ok


def test_minimality_of_k16_by_search():
    certs = minimality_check(catalog_entry("K1,6").graph, SearchConfig(restarts=4, iterations=1000))
    assert all(c.ok and c.method == SEARCH for c in certs)
    for c in certs:
        g = delete_vertex(catalog_entry("K1,6").graph, c.vertex)
        assert verify_embedding(g, c.embedding).ok
