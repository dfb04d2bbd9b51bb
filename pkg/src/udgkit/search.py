"""Numerical realizability probe and vertex-deletion minimality checks.

:func:`search_embedding` minimises a hinge potential by gradient descent with
random restarts.  A miss is *inconclusive*: it never certifies that a graph
is not a unit disk graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .embedder import (
    Embedding,
    EmbeddingParams,
    basic_lobster,
    embed_class_x_star,
    embed_complement_k1_cycle,
    embed_complement_path,
    embed_lobster_star,
)
from .graph import (
    BipartiteGraph,
    Graph,
    complement,
    connected_components,
    contains_induced,
    cycle_graph,
    delete_vertex,
    disjoint_union,
    empty_graph,
    star_op,
    two_coloring,
)
from .structure import recognize_class_x
from .verifier import verify_embedding

CONSTRUCTION = "construction"
SEARCH = "search"
INCONCLUSIVE = "inconclusive"


@dataclass
class SearchConfig:
    restarts: int = 20
    iterations: int = 3000
    step_initial: float = 0.05
    step_final: float = 1e-4
    seed: int = 0
    target_slack: float = 1e-3
    max_n: int = 16

    def __post_init__(self) -> None:
        if self.restarts < 1 or self.iterations < 1:
            raise ValueError("restarts and iterations must be positive")
        if not (self.step_initial > 0 and self.step_final > 0 and self.step_final <= self.step_initial):
            raise ValueError("steps must be positive and non-increasing")
        if self.target_slack <= 0:
            raise ValueError("target slack must be positive")


def _pair_masks(g: Graph) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = g.n
    iu, ju = np.triu_indices(n, k=1)
    adj = np.array([g.has_edge(int(i), int(j)) for i, j in zip(iu, ju)], dtype=bool)
    return iu, ju, adj


def potential(pos: np.ndarray, g: Graph, delta: float, _masks=None) -> float:
    """Sum of squared hinge violations at separation ``delta``."""
    iu, ju, adj = _masks or _pair_masks(g)
    diff = pos[iu] - pos[ju]
    d = np.sqrt((diff ** 2).sum(axis=1))
    edge = np.maximum(0.0, d - 1 + delta)
    non = np.maximum(0.0, 1 + delta - d)
    return float((edge[adj] ** 2).sum() + (non[~adj] ** 2).sum())


def potential_gradient(pos: np.ndarray, g: Graph, delta: float, _masks=None) -> np.ndarray:
    iu, ju, adj = _masks or _pair_masks(g)
    diff = pos[iu] - pos[ju]
    d = np.sqrt((diff ** 2).sum(axis=1))
    safe = np.where(d > 1e-12, d, 1e-12)
    coef = np.where(adj, 2 * np.maximum(0.0, d - 1 + delta), -2 * np.maximum(0.0, 1 + delta - d))
    pair = (coef / safe)[:, None] * diff
    grad = np.zeros_like(pos)
    np.add.at(grad, iu, pair)
    np.add.at(grad, ju, -pair)
    return grad


@dataclass
class SearchResult:
    method: str
    embedding: Optional[Embedding] = None
    potential: float = math.inf
    restart: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"method": self.method, "potential": self.potential, "restart": self.restart}


def search_embedding(g: Graph, cfg: Optional[SearchConfig] = None) -> SearchResult:
    """Gradient descent with restarts; the best restart (lowest potential,
    then lowest index) is returned only if it verifies."""
    cfg = cfg or SearchConfig()
    if g.n > cfg.max_n:
        raise ValueError(f"search is capped at {cfg.max_n} vertices (got {g.n})")
    if g.n == 0:
        return SearchResult(SEARCH, Embedding([], g), 0.0, 0)
    rng = np.random.default_rng(cfg.seed)
    masks = _pair_masks(g)
    delta = cfg.target_slack
    decay = (cfg.step_final / cfg.step_initial) ** (1 / max(cfg.iterations - 1, 1))
    best: Optional[Tuple[float, int, np.ndarray]] = None
    for restart in range(cfg.restarts):
        pos = rng.uniform(0, math.sqrt(g.n), size=(g.n, 2))
        step = cfg.step_initial
        for _ in range(cfg.iterations):
            grad = potential_gradient(pos, g, delta, masks)
            if not grad.any():
                break
            pos = pos - step * grad
            step *= decay
        val = potential(pos, g, delta, masks)
        if best is None or val < best[0]:
            best = (val, restart, pos)
        if val == 0.0:
            break
    assert best is not None
    val, restart, pos = best
    emb = Embedding([(float(x), float(y)) for x, y in pos], g, EmbeddingParams(), kind="search")
    rep = verify_embedding(g, emb, slack=delta / 2)
    if rep.ok and rep.min_edge_slack >= 0 and rep.min_nonedge_margin > 0:
        return SearchResult(SEARCH, emb, val, restart)
    return SearchResult(INCONCLUSIVE, None, val, restart)


# ---------------------------------------------------------------------------
# Minimality
# ---------------------------------------------------------------------------


def _restrict(base: Embedding, g: Graph, mapping: Dict[int, int], kind: str) -> Embedding:
    pts = [base.points[mapping[v]] for v in range(g.n)]
    return Embedding(pts, g, base.params, kind=kind, precision=base.precision)


def _circle_restriction(g: Graph, max_k: int) -> Optional[Embedding]:
    """Embed ``g`` as an induced piece of complement(K1 + C_{2k+1})."""
    for k in range(1, max_k + 1):
        host = complement(disjoint_union(empty_graph(1), cycle_graph(2 * k + 1)))
        if host.n < g.n:
            continue
        mapping = contains_induced(host, g)
        if mapping is not None:
            return _restrict(embed_complement_k1_cycle(k), g, mapping, f"circle-k{k}")
    return None


def _path_construction(g: Graph) -> Optional[Embedding]:
    """``g`` is the complement of a path: rim points of a circle construction."""
    order = _path_order(complement(g))
    if order is None:
        return None
    base = embed_complement_path(len(order))
    return _restrict(base, g, {v: i for i, v in enumerate(order)}, f"complement-path-{len(order)}")


def _circle_candidate(g: Graph) -> Optional[Embedding]:
    # induced subgraphs of complement(K1 + C_m) have complements of max degree <= 2
    co = complement(g)
    if any(co.degree(v) > 2 for v in range(g.n)):
        return None
    return _circle_restriction(g, max_k=(g.n + 3) // 2)


def _co_bipartite_skeleton(g: Graph) -> Optional[BipartiteGraph]:
    part = two_coloring(complement(g))
    if part is None:
        return None
    return star_op(BipartiteGraph(g, part, co=True))


def _path_order(skel: Graph) -> Optional[List[int]]:
    if skel.n == 0 or skel.m != skel.n - 1 or any(skel.degree(v) > 2 for v in range(skel.n)):
        return None
    if len(connected_components(skel)) != 1:
        return None
    if skel.n == 1:
        return [0]
    start = min(v for v in range(skel.n) if skel.degree(v) == 1)
    order, prev = [start], -1
    while len(order) < skel.n:
        nxt = [u for u in skel.neighbors(order[-1]) if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _star_construction(g: Graph) -> Optional[Embedding]:
    """Four-line construction when ``g`` is a starred path, strip construction
    when its bipartite skeleton lies in the class."""
    skel = _co_bipartite_skeleton(g)
    if skel is None:
        return None
    order = _path_order(skel.graph)
    if order is not None:
        lob = basic_lobster(len(order), [False] * len(order))
        emb = embed_lobster_star(lob)
        mapping = {v: i for i, v in enumerate(order)}
        return _restrict(emb, g, mapping, "lobster")
    if recognize_class_x(skel.graph, skel.part).accepted:
        emb = embed_class_x_star(skel.graph, part=skel.part)
        return Embedding(emb.points, g, emb.params, emb.part, kind="caterpillar", precision=emb.precision)
    return None


@dataclass
class VertexCertificate:
    vertex: int
    method: str
    detail: str = ""
    ok: bool = False
    min_edge_slack: Any = None
    min_nonedge_margin: Any = None
    embedding: Optional[Embedding] = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertex": self.vertex,
            "method": self.method,
            "detail": self.detail,
            "ok": self.ok,
            "min_edge_slack": None if self.min_edge_slack is None else float(self.min_edge_slack),
            "min_nonedge_margin": None if self.min_nonedge_margin is None else float(self.min_nonedge_margin),
        }


def certify_udg(g: Graph, cfg: Optional[SearchConfig] = None) -> VertexCertificate:
    """Try the closed-form constructions, then the numerical search."""
    builders = (_path_construction, _circle_candidate, _star_construction)
    for build in builders:
        emb = build(g)
        if emb is None:
            continue
        rep = verify_embedding(g, emb)
        if rep.ok and rep.min_edge_slack >= -1e-12 and rep.min_nonedge_margin > 0:
            return VertexCertificate(-1, CONSTRUCTION, emb.kind, True, rep.min_edge_slack,
                                     rep.min_nonedge_margin, emb)
    cfg = cfg or SearchConfig()
    if g.n <= cfg.max_n:
        res = search_embedding(g, cfg)
        if res.embedding is not None:
            rep = verify_embedding(g, res.embedding)
            return VertexCertificate(-1, SEARCH, f"restart {res.restart}", rep.ok,
                                     rep.min_edge_slack, rep.min_nonedge_margin, res.embedding)
    return VertexCertificate(-1, INCONCLUSIVE, "no construction matched; search found nothing")


def minimality_check(g: Graph, cfg: Optional[SearchConfig] = None) -> List[VertexCertificate]:
    """For every vertex ``v``, try to certify ``g - v`` as a unit disk graph."""
    out = []
    for v in range(g.n):
        cert = certify_udg(delete_vertex(g, v), cfg)
        cert.vertex = v
        out.append(cert)
    return out
