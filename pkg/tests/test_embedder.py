from __future__ import annotations

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from udgkit.embedder import (
    Embedding,
    EmbeddingParams,
    ForbiddenInputError,
    Lobster,
    ParameterError,
    PolarPoint,
    TauPreconditionError,
    basic_lobster,
    circle_radius_interval,
    complement_pipeline,
    complement_target,
    embed_class_x_star,
    embed_class_x_star_full,
    embed_complement_k1_cycle,
    embed_complement_path,
    embed_lobster_star,
    lobster_from_graph,
    special_value_bounds,
    special_value_c,
    special_value_f,
    tau_point,
    tau_transform,
)
from udgkit.graph import U, W, complement, cycle_graph, from_edge_list, path_graph, star_op, BipartiteGraph
from udgkit.numeric import FloatBackend, mp_backend
from udgkit.structure import generate_random_member
from udgkit.verifier import check_strip_conditions, verify_embedding


def chord(rho, slots, m):
    return 2 * rho * math.sin(math.pi * slots / m)


# -- circle constructions ---------------------------------------------------------


def test_radius_interval_for_seven_rim_points():
    lo, hi = circle_radius_interval(3)
    assert lo == pytest.approx(0.512858431636277, abs=1e-12)
    assert hi == pytest.approx(0.6395240038449663, abs=1e-12)


@pytest.mark.parametrize("k", range(1, 9))
def test_radius_interval_separates_longest_chords(k):
    m = 2 * k + 1
    lo, hi = circle_radius_interval(k)
    for rho in (lo * (1 + 1e-9), (lo + hi) / 2, hi):
        assert chord(rho, k, m) > 1
        if k > 1:
            assert chord(rho, k - 1, m) <= 1 + 1e-12
        assert rho <= 1


def test_radius_interval_rejects_k0():
    with pytest.raises(ParameterError):
        circle_radius_interval(0)


@pytest.mark.parametrize("k", [1, 2, 3, 6])
def test_complement_k1_cycle_verifies_in_both_backends(k):
    for num in (FloatBackend(), mp_backend(40)):
        emb = embed_complement_k1_cycle(k, num)
        assert emb.target.n == 2 * k + 2
        assert verify_embedding(emb.target, emb, slack=0).ok


@pytest.mark.parametrize("m", [1, 2, 3, 7, 10])
def test_complement_path(m):
    emb = embed_complement_path(m)
    assert emb.target == complement(path_graph(m))
    rep = verify_embedding(emb.target, emb, slack=0)
    assert rep.ok


def test_polar_convention():
    x, y = PolarPoint(2.0, math.pi / 2).to_xy()
    assert (x, y) == pytest.approx((2.0, 0.0))


# -- lobsters ---------------------------------------------------------------------------


def test_lobster_star_distances_exact_in_mp():
    lob = basic_lobster(5)
    num = mp_backend(60)
    emb = embed_lobster_star(lob, num=num)
    # unit pairs are exact up to rounding at 60 digits
    rep = verify_embedding(emb.target, emb, slack=1e-40)
    assert rep.ok
    # verticals are mu apart; leg and foot lines sit exactly 1 apart
    g1, r1 = lob.spine[0], lob.feet[0]
    b1 = lob.legs[0]
    assert abs(emb.points[r1][1] - emb.points[b1][1]) == 1


def test_moving_a_lobster_point_by_two_mu_squared_breaks_it():
    lob = basic_lobster(6)
    emb = embed_lobster_star(lob)
    mu = emb.params.mu
    broken = 0
    for v in range(emb.target.n):
        for dx, dy in ((0, 2 * mu * mu), (0, -2 * mu * mu)):
            pts = list(emb.points)
            pts[v] = (pts[v][0] + dx, pts[v][1] + dy)
            moved = Embedding(pts, emb.target, emb.params, emb.part)
            broken += not verify_embedding(emb.target, moved, slack=1e-12).ok
    assert broken > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.lists(st.booleans(), min_size=12, max_size=12),
       st.lists(st.booleans(), min_size=12, max_size=12), st.floats(0.05, 0.95))
def test_random_lobster_stars_verify(n, legs, feet, frac):
    lob = basic_lobster(n, legs[:n], feet[:n])
    emb = embed_lobster_star(lob, mu=frac / n)
    rep = verify_embedding(emb.target, emb, slack=1e-12)
    assert rep.ok
    assert emb.target == star_op(BipartiteGraph(lob.graph(), lob.part())).graph


def test_lobster_mu_bounds():
    lob = basic_lobster(4)
    for mu in (0, 0.25, -0.1):
        with pytest.raises(ParameterError):
            embed_lobster_star(lob, mu=mu)


def test_lobster_validation():
    with pytest.raises(ValueError):
        Lobster([0, 1], [None], [None])
    with pytest.raises(ValueError):
        Lobster([0], [None], [1])


def test_p5_star_via_lobster_reading():
    lob = lobster_from_graph(path_graph(5))
    emb = embed_lobster_star(lob)
    assert verify_embedding(emb.target, emb).ok


# -- strip construction ------------------------------------------------------------------------


def test_c6_star_verifies_with_strip_conditions():
    emb = embed_class_x_star(cycle_graph(6))
    rep = verify_embedding(emb.target, emb, slack=1e-40, strip=True)
    assert rep.ok and rep.strip_ok


def test_forbidden_input_raises_with_witness():
    with pytest.raises(ForbiddenInputError) as info:
        embed_class_x_star(cycle_graph(4))
    assert info.value.witness.name == "C4"


def test_epsilon_range_checked():
    with pytest.raises(ParameterError):
        embed_class_x_star(cycle_graph(6), epsilon=0.5)
    with pytest.raises(ParameterError):
        embed_class_x_star(cycle_graph(6), epsilon=0)


def test_wide_layout_rejected():
    g = generate_random_member(3, 40)
    with pytest.raises(ParameterError, match="strip width"):
        embed_class_x_star(g, epsilon=1 / 130)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_generated_members_embed_with_strip_conditions(seed):
    g = generate_random_member(seed, 24)
    res = embed_class_x_star_full(g, num=mp_backend(60))
    emb = res.embedding
    rep = verify_embedding(emb.target, emb, slack=1e-40)
    assert rep.ok
    p = emb.params
    strip = check_strip_conditions(emb, p.delta, p.sigma, p.q_dprime)
    assert strip.ok


def test_twin_copies_are_distinct_points():
    # two parallel a-x-y-b paths: the copy is offset, not stacked
    g = from_edge_list(8, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 3), (0, 6), (6, 7), (7, 3)])
    emb = embed_class_x_star(g)
    assert len(set(emb.points)) == g.n
    assert verify_embedding(emb.target, emb, slack=1e-40).ok


def test_twin_offsets_are_multiples_of_the_step():
    # spine vertex 1 with three leg-foot pairs and a bare pendant; copies whose
    # foot is missing are recorded with a placeholder id of -1
    g = from_edge_list(9, [(0, 1), (1, 2), (1, 3), (3, 4), (1, 5), (5, 6), (1, 7), (7, 8)])
    num = mp_backend(50)
    res = embed_class_x_star_full(g, num=num)
    pts, p = res.embedding.points, res.embedding.params
    assert res.layout.twins
    step = p.t1 * p.epsilon
    for (bx, by), copies in res.layout.twins:
        for j, (cx, cy) in enumerate(copies, start=1):
            for base, copy in ((bx, cx), (by, cy)):
                if copy < 0:
                    continue
                d = num.sqrt((pts[base][0] - pts[copy][0]) ** 2 + (pts[base][1] - pts[copy][1]) ** 2)
                assert abs(d - j * step) < 1e-40


def test_pendant_twins_share_a_point():
    g = from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
    emb = embed_class_x_star(g)
    assert emb.points[1] == emb.points[2] == emb.points[3]
    assert verify_embedding(emb.target, emb, slack=1e-40).ok


# -- polar map -----------------------------------------------------------------------------------


def test_tau_sends_origin_pair_to_opposite_half_units():
    num = mp_backend(30)
    a = tau_point(num.num(0), num.num(1), True, num)
    b = tau_point(num.num(0), num.num(0), False, num)
    assert abs(a[0] - mpmath.mpf("0.5")) < 1e-25 and abs(a[1]) < 1e-25
    assert abs(b[0] + mpmath.mpf("0.5")) < 1e-25 and abs(b[1]) < 1e-25


def test_tau_requires_labels_and_small_strips():
    emb = Embedding([(0.0, 0.0), (0.0, 1.0)], from_edge_list(2, [(0, 1)]),
                    EmbeddingParams(sigma=0.01, delta=0.1))
    with pytest.raises(TauPreconditionError):
        tau_transform(emb)
    emb.part = (U, W)
    with pytest.raises(TauPreconditionError):
        tau_transform(emb, sigma=0.1)
    with pytest.raises(TauPreconditionError):
        tau_transform(emb, delta=0.5)


def test_tau_rejects_pairs_near_unit_distance():
    emb = Embedding([(0.0, 0.0), (0.0, 1.0)], from_edge_list(2, [(0, 1)]),
                    EmbeddingParams(sigma=0.01, delta=0.1), part=(U, W))
    with pytest.raises(TauPreconditionError) as info:
        tau_transform(emb)
    assert ("pair", 0, 1) in info.value.offending


def test_single_edge_complement_pipeline():
    res = complement_pipeline(path_graph(2), num=mp_backend(60))
    emb = res.embedding
    assert emb.target == complement_target(path_graph(2)) == from_edge_list(2, [])
    rep = verify_embedding(emb.target, emb, slack=0)
    assert rep.ok and rep.min_nonedge_margin > 0


def test_c6_complement_pipeline():
    res = complement_pipeline(cycle_graph(6), num=mp_backend(60))
    emb = res.embedding
    assert emb.target == complement(cycle_graph(6))
    rep = verify_embedding(emb.target, emb, slack=0, convexity=True)
    assert rep.ok and rep.convexity_ok
    assert rep.min_edge_slack > 0 and rep.min_nonedge_margin > 0


# -- special values ---------------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-4, 0.05), st.floats(0, 0.01))
def test_special_value_f_is_a_unit_distance(beta, a):
    num = mp_backend(50)
    beta, a = num.num(beta), num.num(a)
    f = special_value_f(beta, a, num)
    px, py = PolarPoint(num.num(1) / 2 + f, -num.pi / 2 + 2 * beta).to_xy(num)
    qx, qy = PolarPoint(num.num(1) / 2 - a, num.pi / 2).to_xy(num)
    assert abs(num.sqrt((px - qx) ** 2 + (py - qy) ** 2) - 1) < 1e-40
    lo, hi = special_value_bounds(beta, a)
    assert lo <= f <= hi


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-4, 0.3), st.floats(0, 0.1))
def test_special_value_c_is_a_unit_distance(beta, a):
    c = special_value_c(beta, a)
    assert math.hypot(beta, 1 + a - c) == pytest.approx(1.0, abs=1e-12)
