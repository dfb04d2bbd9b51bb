"""Explicit unit-disk embeddings.

* circle constructions for complement(K1 + C_{2k+1}) and complement(P_m);
* the four-line construction for starred basic lobsters;
* the strip construction for starred class-X graphs (hexagon blocks, spines,
  legs, pendants, parallel-edge copies);
* the polar map ``tau`` that turns a strip embedding of G* into one of the
  co-bipartite complement.

Every function returns an :class:`Embedding` that names its target graph; no
output is trusted until :func:`udgkit.verifier.verify_embedding` accepts it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .graph import (
    BipartiteGraph,
    Graph,
    U,
    W,
    bipartite_complement,
    complement,
    connected_components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    from_edge_list,
    induced_subgraph,
    path_graph,
    star_op,
    two_coloring,
)
from .numeric import Backend, FloatBackend, format_number, is_mp, mp_backend
from .structure import CaterpillarDecomposition, Witness, recognize_class_x


class ParameterError(ValueError):
    """A construction parameter is outside its admissible range."""


class ForbiddenInputError(ValueError):
    """The input graph is outside the class; carries the induced witness."""

    def __init__(self, witness: Witness) -> None:
        super().__init__(f"input contains forbidden induced {witness.name}: {list(witness.vertices)}")
        self.witness = witness


class TauPreconditionError(ValueError):
    """Strip embedding does not meet the hypotheses of the polar map."""

    def __init__(self, message: str, offending: List[tuple]) -> None:
        super().__init__(message)
        self.offending = offending


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolarPoint:
    """``(radius, angle)`` converted as ``(r sin a, r cos a)``."""

    radius: Any
    angle: Any

    def to_xy(self, num: Backend = None) -> Tuple[Any, Any]:
        num = num or FloatBackend()
        return (self.radius * num.sin(self.angle), self.radius * num.cos(self.angle))


@dataclass
class EmbeddingParams:
    epsilon: Any = None
    mu: Any = None
    delta: Any = None
    sigma: Any = None
    q: Any = None
    r: Any = None
    q_prime: Any = None
    r_prime: Any = None
    q_dprime: Any = None
    t: Any = None
    t1: Any = None
    k_total: Optional[int] = None
    rho: Any = None
    scale: Any = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            out[f.name] = v if isinstance(v, int) and not isinstance(v, bool) else format_number(v)
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any], num: Backend = None) -> "EmbeddingParams":
        num = num or FloatBackend()
        kwargs: Dict[str, Any] = {}
        for f in fields(cls):
            if f.name not in data:
                continue
            v = data[f.name]
            kwargs[f.name] = int(v) if f.name == "k_total" else num.num(v)
        return cls(**kwargs)


@dataclass
class Embedding:
    """Points for every vertex of ``target`` plus the certifying parameters.

    ``part`` (when set) assigns each vertex to the lower strip (``U``) or the
    upper strip (``W``); ``precision`` is the decimal precision of mp points.
    """

    points: List[Tuple[Any, Any]]
    target: Graph
    params: EmbeddingParams = field(default_factory=EmbeddingParams)
    part: Optional[Tuple[str, ...]] = None
    kind: str = ""
    precision: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.points) != self.target.n:
            raise ValueError(f"{len(self.points)} points for {self.target.n} vertices")

    def backend(self) -> Backend:
        return mp_backend(self.precision) if self.precision else FloatBackend()

    def as_float(self) -> List[Tuple[float, float]]:
        return [(float(x), float(y)) for x, y in self.points]

    def scaled(self, factor: Any) -> "Embedding":
        pts = [(x * factor, y * factor) for x, y in self.points]
        return Embedding(pts, self.target, self.params, self.part, self.kind, self.precision)


# ---------------------------------------------------------------------------
# Circle constructions
# ---------------------------------------------------------------------------


def circle_radius_interval(k: int, num: Backend = None) -> Tuple[Any, Any]:
    """Radii placing 2k+1 equally spaced rim points so that only the
    longest chords exceed 1: returns the interval ``(lo, hi]``."""
    num = num or FloatBackend()
    if k < 1:
        raise ParameterError("k must be at least 1")
    m = 2 * k + 1
    lo = 1 / (2 * num.sin(k * num.pi / m))
    hi = 1 if k == 1 else min(num.num(1), 1 / (2 * num.sin((k - 1) * num.pi / m)))
    if not lo < hi:
        raise AssertionError(f"empty radius interval for k={k}")
    return lo, hi


def embed_complement_k1_cycle(k: int, num: Backend = None) -> Embedding:
    """Centre plus 2k+1 rim points; vertex 0 is the isolated K1 vertex and
    vertex ``i+1`` is cycle vertex ``i`` of C_{2k+1}."""
    num = num or FloatBackend()
    lo, hi = circle_radius_interval(k, num)
    rho = (lo + hi) / 2
    m = 2 * k + 1
    pts = [(num.num(0), num.num(0))]
    for i in range(m):
        slot = (i * k) % m  # cycle neighbours sit k slots apart: the longest chords
        pts.append(PolarPoint(rho, 2 * num.pi * slot / m).to_xy(num))
    target = complement(disjoint_union(empty_graph(1), cycle_graph(m)))
    return Embedding(pts, target, EmbeddingParams(rho=rho), kind="complement-k1-cycle",
                     precision=num.dps)


def embed_complement_path(m: int, num: Backend = None) -> Embedding:
    """complement(P_m) as rim points of the smallest circle construction
    whose odd cycle contains P_m."""
    num = num or FloatBackend()
    if m < 1:
        raise ParameterError("m must be at least 1")
    k = max(1, (m + 1) // 2)
    base = embed_complement_k1_cycle(k, num)
    keep = list(range(1, m + 1))
    target = complement(path_graph(m))
    pts = [base.points[v] for v in keep]
    return Embedding(pts, target, EmbeddingParams(rho=base.params.rho), kind="complement-path",
                     precision=num.dps)


# ---------------------------------------------------------------------------
# Lobsters
# ---------------------------------------------------------------------------


@dataclass
class Lobster:
    """Basic lobster: spine ``g_1..g_n``; ``legs[i]``/``feet[i]`` may be ``None``."""

    spine: List[int]
    legs: List[Optional[int]]
    feet: List[Optional[int]]

    def __post_init__(self) -> None:
        if not (len(self.spine) == len(self.legs) == len(self.feet)):
            raise ValueError("spine, legs and feet must have equal length")
        for b, r in zip(self.legs, self.feet):
            if b is None and r is not None:
                raise ValueError("a foot needs a leg")

    @property
    def n(self) -> int:
        return 1 + max(v for v in self.spine + self.legs + self.feet if v is not None)

    def edges(self) -> List[Tuple[int, int]]:
        out = [(self.spine[i], self.spine[i + 1]) for i in range(len(self.spine) - 1)]
        for g, b, r in zip(self.spine, self.legs, self.feet):
            if b is not None:
                out.append((g, b))
                if r is not None:
                    out.append((b, r))
        return out

    def graph(self) -> Graph:
        return from_edge_list(self.n, self.edges())

    def part(self) -> Tuple[str, ...]:
        lab = [U] * self.n
        for i, (g, b, r) in enumerate(zip(self.spine, self.legs, self.feet), start=1):
            top = i % 2 == 1  # odd spine vertices sit on the upper inner line
            lab[g] = W if top else U
            if b is not None:
                lab[b] = U if top else W
            if r is not None:
                lab[r] = W if top else U
        return tuple(lab)


def basic_lobster(n_spine: int, legs: Optional[Sequence[bool]] = None,
                  feet: Optional[Sequence[bool]] = None) -> Lobster:
    """Lobster with consecutive ids: spine first, then legs, then feet."""
    legs = [True] * n_spine if legs is None else list(legs)
    feet = list(legs) if feet is None else [f and l for f, l in zip(feet, legs)]
    nxt = n_spine
    leg_ids: List[Optional[int]] = []
    for has in legs:
        leg_ids.append(nxt if has else None)
        nxt += has
    foot_ids: List[Optional[int]] = []
    for has in feet:
        foot_ids.append(nxt if has else None)
        nxt += has
    return Lobster(list(range(n_spine)), leg_ids, foot_ids)


def lobster_from_graph(g: Graph) -> Optional[Lobster]:
    """Read ``g`` as a basic lobster (each spine vertex carries at most one
    leg, each leg at most one foot), trying spines in order of decreasing
    length; ``None`` when no spine works."""
    if g.n == 0 or g.m != g.n - 1 or len(connected_components(g)) != 1:
        return None
    paths = []
    for s in range(g.n):
        prev = {s: -1}
        order = [s]
        for v in order:
            for u in g.neighbors(v):
                if u not in prev:
                    prev[u] = v
                    order.append(u)
        for t in range(s, g.n):
            path = [t]
            while path[-1] != s:
                path.append(prev[path[-1]])
            paths.append(path)
    paths.sort(key=lambda p: (-len(p), p))
    for spine in paths:
        on = set(spine)
        legs: List[Optional[int]] = []
        feet: List[Optional[int]] = []
        ok = True
        for v in spine:
            off = [u for u in g.neighbors(v) if u not in on]
            if len(off) > 1:
                ok = False
                break
            leg = off[0] if off else None
            foot = None
            if leg is not None:
                rest = [u for u in g.neighbors(leg) if u != v]
                if len(rest) > 1 or (rest and g.degree(rest[0]) != 1):
                    ok = False
                    break
                foot = rest[0] if rest else None
            legs.append(leg)
            feet.append(foot)
        if ok:
            return Lobster(spine, legs, feet)
    return None


def random_basic_lobster(rng: random.Random, max_vertices: int) -> Lobster:
    n_spine = rng.randint(1, max(1, max_vertices // 3))
    legs = [rng.random() < 0.8 for _ in range(n_spine)]
    feet = [rng.random() < 0.7 for _ in range(n_spine)]
    return basic_lobster(n_spine, legs, feet)


def lobster_line_gaps(mu: Any, num: Backend = None) -> Tuple[Any, Any, Any]:
    num = num or FloatBackend()
    s = num.sqrt(1 - mu * mu)
    c = (1 - s) / 2
    return c, s, c


def embed_lobster_star(lob: Lobster, mu: Any = None, num: Backend = None) -> Embedding:
    """Four horizontal lines with verticals ``mu`` apart (starred lobster)."""
    num = num or FloatBackend()
    n = len(lob.spine)
    if mu is None:
        mu = num.num(1) / (2 * n)
    mu = num.num(mu)
    if not 0 < mu < num.num(1) / n:
        raise ParameterError(f"mu must lie in (0, 1/{n}), got {mu}")
    c, s, _ = lobster_line_gaps(mu, num)
    lines = (num.num(0), c, c + s, num.num(1))  # L1..L4
    pts: List[Any] = [None] * lob.n
    for i, (g, b, r) in enumerate(zip(lob.spine, lob.legs, lob.feet), start=1):
        x = (i - 1) * mu
        odd = i % 2 == 1
        pts[g] = (x, lines[2] if odd else lines[1])
        if b is not None:
            pts[b] = (x, lines[0] if odd else lines[3])
        if r is not None:
            pts[r] = (x, lines[3] if odd else lines[0])
    if any(p is None for p in pts):
        raise ParameterError("lobster ids must be 0..n-1 without gaps")
    part = lob.part()
    target = star_op(BipartiteGraph(lob.graph(), part)).graph
    params = EmbeddingParams(mu=mu, delta=(n - 1) * mu, sigma=c)
    return Embedding(pts, target, params, part, kind="lobster-star", precision=num.dps)


# ---------------------------------------------------------------------------
# Strip construction for class-X graphs
# ---------------------------------------------------------------------------

# Model coordinates: a point (X, h) in the lower strip sits at (eps*X, eps^2*h),
# in the upper strip at (eps*X, 1 + eps^2*h).  For a lower point u and an upper
# point w, dist(u, w) = 1 + eps^2*(dX^2/2 - (h_u - h_w)) + O(eps^4), so the pair
# is adjacent iff h_u - h_w >= dX^2/2.

CORNER_H = 4.75
CENTRE_H = 0.25
R_H = 0.25
PORT_H = 2.75
SPINE_STEP_SQ = 19  # spine X step sqrt(19): dX^2/2 = 2 * CORNER_H exactly
COMPONENT_GAP = 6
Q_CONST = 1 / 64
R_CONST = 5


@dataclass
class ModelLayout:
    """Model positions of a basic graph, exact-placement parents, and the
    parallel-edge copies still to be drawn."""

    X: Dict[int, Any] = field(default_factory=dict)
    part: Dict[int, str] = field(default_factory=dict)
    h: Dict[int, float] = field(default_factory=dict)
    parents: Dict[int, List[int]] = field(default_factory=dict)
    twins: List[Tuple[Tuple[int, int], List[Tuple[int, int]]]] = field(default_factory=list)
    virtual: set = field(default_factory=set)

    def put(self, v: int, X: Any, part: str, h: float) -> None:
        if v in self.X:
            if abs(float(self.X[v] - X)) > 1e-9 or self.part[v] != part or self.h[v] != h:
                raise AssertionError(f"conflicting model positions for vertex {v}")
            return
        self.X[v], self.part[v], self.h[v] = X, part, h
        self.parents.setdefault(v, [])

    def margin(self, u: int, w: int) -> float:
        """Signed model margin: >= 0 adjacent, 0 exact, < 0 non-adjacent."""
        if self.part[u] == self.part[w]:
            raise ValueError("model margins are defined for cross pairs only")
        if self.part[u] == W:
            u, w = w, u
        dx = float(self.X[u] - self.X[w])
        return self.h[u] - self.h[w] - dx * dx / 2

    def check(self, edges: set) -> Tuple[float, List[Tuple[int, int, float]]]:
        """Minimum non-exact |margin| and the list of misclassified / unplanned exact pairs."""
        verts = sorted(self.X)
        worst = math.inf
        bad = []
        for i, u in enumerate(verts):
            for w in verts[i + 1:]:
                if self.part[u] == self.part[w]:
                    continue
                m = self.margin(u, w)
                adj = (min(u, w), max(u, w)) in edges
                exact = w in self.parents.get(u, ()) or u in self.parents.get(w, ())
                if exact:
                    if abs(m) > 1e-9 or not adj:
                        bad.append((u, w, m))
                    continue
                if abs(m) < 1e-9 or (m > 0) != adj:
                    bad.append((u, w, m))
                else:
                    worst = min(worst, abs(m))
        return worst, bad


def _other(edge: Tuple[int, int], v: int) -> int:
    return edge[1] if edge[0] == v else edge[0]


def layout_model(dec: CaterpillarDecomposition, num: Backend = None) -> ModelLayout:
    """Model layout of the basic graph underlying ``dec`` (pendant twins and
    parallel copies excluded; copies are recorded in ``twins``)."""
    num = num or FloatBackend()
    part = dec.part
    lay = ModelLayout()
    S = num.sqrt(SPINE_STEP_SQ)
    opp = {U: W, W: U}
    corner_h = {U: CORNER_H, W: -CORNER_H}
    port_h = {U: PORT_H, W: -PORT_H}
    ports = set(dec.gluing_vertices())
    next_virtual = [-1]

    def virtual() -> int:
        v = next_virtual[0]
        next_virtual[0] -= 1
        lay.virtual.add(v)
        return v

    x0: Any = num.num(0)
    for chain in dec.chains:
        prev: Optional[int] = None
        after_strip = False
        touched: List[int] = []
        chain_vertices: List[int] = []
        chain_corners: List[int] = []
        for kind, x in chain:
            if kind == "v":
                chain_vertices.append(x)
                if after_strip:
                    pass  # right port, placed by its strip
                elif prev is None:
                    lay.put(x, x0, part[x], corner_h[part[x]])
                else:
                    lay.put(x, lay.X[prev] + S, part[x], corner_h[part[x]])
                    lay.parents[x].append(prev)
                touched.append(x)
                prev, after_strip = x, False
                continue
            strip = dec.strips[x]
            XL = lay.X[strip.left_port] if strip.left_port is not None else x0
            for i, unit in enumerate(strip.units):
                c = XL + 3 + 6 * i
                (a1, b1), (a2, b2) = unit.paths[0], unit.paths[1]
                if part[unit.a] == W:
                    TL, BL, CT, BR, TR, CB = unit.a, a1, b1, unit.b, b2, a2
                else:
                    BL, TL, CB, TR, BR, CT = unit.a, a1, b1, unit.b, b2, a2
                lay.put(TL, c - 3, W, -CORNER_H)
                lay.put(BL, c - 3, U, CORNER_H)
                lay.put(CT, c, W, CENTRE_H)
                lay.put(CB, c, U, -CENTRE_H)
                lay.put(TR, c + 3, W, -CORNER_H)
                lay.put(BR, c + 3, U, CORNER_H)
                for corner, centre in ((TL, CB), (BL, CT), (TR, CB), (BR, CT)):
                    if centre not in lay.parents[corner]:
                        lay.parents[corner].append(centre)
                chain_corners += [TL, BL, TR, BR]
                touched += [TL, BL, CT, CB, TR, BR]
                if unit.k >= 3:
                    rx, ry = unit.paths[2]
                    if part[unit.a] == W:
                        lay.put(rx, c - 0.5, U, R_H)
                        lay.put(ry, c + 0.5, W, -R_H)
                    else:
                        lay.put(rx, c - 0.5, W, -R_H)
                        lay.put(ry, c + 0.5, U, R_H)
                    lay.parents[ry] = [rx]
                    touched += [rx, ry]
                    if unit.k > 3:
                        lay.twins.append(((rx, ry), [tuple(p) for p in unit.paths[3:]]))
            XR = XL + 6 * len(strip.units)
            for port, edge, shift in ((strip.left_port, strip.left_edge, 1),
                                      (strip.right_port, strip.right_edge, -1)):
                if port is None:
                    continue
                p = _other(edge, port)
                base = XL if shift > 0 else XR
                lay.X[p] = base + shift
                lay.h[p] = port_h[part[p]]
                lay.parents[p] = []
            prev, after_strip = strip.right_port, True
        # legs
        for v in chain_vertices:
            legs = dec.legs.get(v, [])
            if not legs:
                continue
            hl = port_h[opp[part[v]]] if v in ports else 0.0
            footed = [l for l in legs if l.foot is not None]
            footless = [l for l in legs if l.foot is None]
            if footed:
                base = footed[0]
                lay.put(base.vertex, lay.X[v], opp[part[v]], hl)
                lay.put(base.foot, lay.X[v], part[v], hl)
                lay.parents[base.foot] = [base.vertex]
                copies = [(l.vertex, l.foot) for l in footed[1:]]
                copies += [(l.vertex, virtual()) for l in footless]
                if copies:
                    lay.twins.append(((base.vertex, base.foot), copies))
            else:
                for l in footless:
                    lay.put(l.vertex, lay.X[v], opp[part[v]], hl)
            touched += [l.vertex for l in legs]
        for c in dict.fromkeys(chain_corners):
            for p in dec.corner_pendants.get(c, []):
                lay.put(p, lay.X[c], opp[part[c]], lay.h[c])
                lay.parents[p] = [c]
        x0 = max(lay.X[v] for v in touched if v in lay.X) + COMPONENT_GAP
    return lay


def _topological(parents: Dict[int, List[int]]) -> List[int]:
    order: List[int] = []
    state: Dict[int, int] = {}
    for root in sorted(parents):
        stack = [(root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                state[v] = 2
                order.append(v)
                continue
            if state.get(v):
                continue
            state[v] = 1
            stack.append((v, True))
            for p in parents[v]:
                if state.get(p) == 1:
                    raise AssertionError("cyclic placement dependencies")
                if not state.get(p):
                    stack.append((p, False))
    return order


def place_exact(lay: ModelLayout, eps: Any, num: Backend) -> Dict[int, Tuple[Any, Any]]:
    """Real coordinates: roots at their model position, children at exact
    unit distance from their parent(s)."""
    eps2 = eps * eps
    one = num.num(1)
    pts: Dict[int, Tuple[Any, Any]] = {}
    for v in _topological(lay.parents):
        top = lay.part[v] == W
        x = eps * lay.X[v]
        y_model = (one if top else 0) + eps2 * num.num(lay.h[v])
        par = lay.parents[v]
        if not par:
            pts[v] = (x, y_model)
        elif len(par) == 1:
            px, py = pts[par[0]]
            rise = num.sqrt(one - (x - px) ** 2)
            pts[v] = (x, py + rise if top else py - rise)
        elif len(par) == 2:
            (x1, y1), (x2, y2) = pts[par[0]], pts[par[1]]
            dx, dy = x2 - x1, y2 - y1
            d = num.sqrt(dx * dx + dy * dy)
            hgt = num.sqrt(one - d * d / 4)
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            nx, ny = -dy / d, dx / d
            cands = [(mx + hgt * nx, my + hgt * ny), (mx - hgt * nx, my - hgt * ny)]
            pts[v] = min(cands, key=lambda p: (p[0] - x) ** 2 + (p[1] - y_model) ** 2)
        else:
            raise AssertionError(f"vertex {v} has {len(par)} exact-placement parents")
    return pts


def duplicate_twins(pts: Dict[int, Tuple[Any, Any]],
                    twins: List[Tuple[Tuple[int, int], List[Tuple[int, int]]]],
                    step: Any, num: Backend) -> Dict[int, Tuple[Any, Any]]:
    """Copy ``j`` of a parallel edge is the base edge translated by ``j * step``
    perpendicular to it, towards larger x.  ``step`` is ``t1 * eps``."""
    out = dict(pts)
    for (bx, by), copies in twins:
        (px, py), (qx, qy) = pts[bx], pts[by]
        dx, dy = qx - px, qy - py
        d = num.sqrt(dx * dx + dy * dy)
        nx, ny = -dy / d, dx / d
        if nx < 0:
            nx, ny = -nx, -ny
        for j, (cx, cy) in enumerate(copies, start=1):
            ox, oy = j * step * nx, j * step * ny
            out[cx] = (px + ox, py + oy)
            out[cy] = (qx + ox, qy + oy)
    return out


def default_epsilon(n: int, num: Backend = None) -> Any:
    num = num or FloatBackend()
    return min(num.num(1) / (15 * max(n, 1)), num.num(1) / 128) / 2


def q_dprime(n: int, num: Backend = None) -> Any:
    num = num or FloatBackend()
    return num.num(1) / (num.num(64) ** 4 * 200 * max(n, 1) ** 2)


@dataclass
class StarResult:
    embedding: Embedding
    decomposition: CaterpillarDecomposition
    layout: ModelLayout


def _recognized(g: Graph, part: Optional[Sequence[str]]) -> Tuple[CaterpillarDecomposition, Tuple[str, ...]]:
    rec = recognize_class_x(g, part)
    if rec.witness is not None:
        raise ForbiddenInputError(rec.witness)
    dec = rec.decomposition
    assert dec is not None
    return dec, dec.part


def embed_class_x_star_full(g: Graph, epsilon: Any = None, num: Backend = None,
                            part: Optional[Sequence[str]] = None) -> StarResult:
    num = num or mp_backend()
    dec, lab = _recognized(g, part)
    n = g.n
    # 1/(15n) merely guarantees delta < 1/3; larger epsilon is accepted when
    # the finished layout still fits (checked below).
    eps = default_epsilon(n, num) if epsilon is None else num.num(epsilon)
    if not 0 < eps < num.num(1) / 128:
        raise ParameterError("epsilon must lie in (0, 1/128)")
    lay = layout_model(dec, num)
    pts = place_exact(lay, eps, num)
    k_total = sum(len(c) for _, c in lay.twins)
    q, r = num.num(Q_CONST), num.num(R_CONST)
    t = q / (64 * num.sqrt(r))
    t1 = t / max(k_total, 1)
    pts = duplicate_twins(pts, lay.twins, t1 * eps, num)
    for extra, rep in dec.pendant_twins.items():
        pts[extra] = pts[rep]
    missing = [v for v in range(n) if v not in pts]
    if missing:
        raise AssertionError(f"vertices {missing} were not placed")
    minx = min(pts[v][0] for v in range(n)) if n else num.num(0)
    points = [(pts[v][0] - minx, pts[v][1]) for v in range(n)]
    kk = max(k_total, 1)
    width = (max(p[0] for p in points) if n else num.num(0)) + eps
    if not width < num.num(1) / 3:
        raise ParameterError(f"epsilon too large: strip width {float(width):.4g} is not below 1/3")
    params = EmbeddingParams(
        epsilon=eps,
        delta=width,
        sigma=2 * r * eps * eps,
        q=q,
        r=r,
        q_prime=q * q / (64 ** 2 * r * 4 * kk * kk),
        r_prime=2 * r,
        q_dprime=q_dprime(n, num),
        t=t,
        t1=t1,
        k_total=k_total,
    )
    target = star_op(BipartiteGraph(g, lab)).graph
    emb = Embedding(points, target, params, lab, kind="class-x-star", precision=num.dps)
    return StarResult(emb, dec, lay)


def embed_class_x_star(g: Graph, epsilon: Any = None, num: Backend = None,
                       part: Optional[Sequence[str]] = None) -> Embedding:
    """Strip embedding of G* (both parts cliques, cross edges of ``g``)."""
    return embed_class_x_star_full(g, epsilon, num, part).embedding


# ---------------------------------------------------------------------------
# Polar map and the complement pipeline
# ---------------------------------------------------------------------------


def tau_point(x: Any, y: Any, upper: bool, num: Backend) -> Tuple[Any, Any]:
    """Image of a strip point: lower (a, y) -> (1/2 + y, -pi/2 + 2a)_p,
    upper (a, 1 + y) -> (1/2 - y, pi/2 + 2a)_p."""
    half = num.num(1) / 2
    if upper:
        return PolarPoint(half - (y - 1), num.pi / 2 + 2 * x).to_xy(num)
    return PolarPoint(half + y, -num.pi / 2 + 2 * x).to_xy(num)


def tau_annulus_violations(emb: Embedding, sigma: Any, delta: Any) -> List[tuple]:
    """Points outside the strips and cross pairs with |d - 1| <= 100 sigma^2."""
    num = emb.backend()
    bad: List[tuple] = []
    if emb.part is None:
        raise TauPreconditionError("embedding carries no part labels", [])
    for v, (x, y) in enumerate(emb.points):
        base = 1 if emb.part[v] == W else 0
        if not (0 <= x <= delta and abs(y - base) <= sigma):
            bad.append(("point", v))
    band = 100 * sigma * sigma
    lower = [v for v in range(emb.target.n) if emb.part[v] == U]
    upper = [v for v in range(emb.target.n) if emb.part[v] == W]
    for u in lower:
        ux, uy = emb.points[u]
        for w in upper:
            wx, wy = emb.points[w]
            d = num.sqrt((ux - wx) ** 2 + (uy - wy) ** 2)
            if abs(d - 1) <= band:
                bad.append(("pair", u, w))
    return bad


def tau_transform(emb: Embedding, sigma: Any = None, delta: Any = None,
                  check: bool = True) -> Embedding:
    """Apply the polar map; the result represents the co-bipartite graph with
    the cross relation of ``emb.target`` complemented."""
    num = emb.backend()
    sigma = emb.params.sigma if sigma is None else num.num(sigma)
    delta = emb.params.delta if delta is None else num.num(delta)
    if emb.part is None or sigma is None or delta is None:
        raise TauPreconditionError("part labels, sigma and delta are required", [])
    if not (sigma < num.num(1) / 12 and delta < num.num(1) / 3):
        raise TauPreconditionError("need sigma < 1/12 and delta < 1/3", [])
    if check:
        bad = tau_annulus_violations(emb, sigma, delta)
        if bad:
            raise TauPreconditionError(f"{len(bad)} points/pairs violate the strip hypotheses", bad)
    pts = [tau_point(x, y, emb.part[v] == W, num) for v, (x, y) in enumerate(emb.points)]
    co = BipartiteGraph(emb.target, emb.part, co=_parts_are_cliques(emb.target, emb.part))
    target = bipartite_complement(co).graph
    params = EmbeddingParams(**{f.name: getattr(emb.params, f.name) for f in fields(EmbeddingParams)})
    params.delta = None  # the image no longer lies in the strips
    return Embedding(pts, target, params, emb.part, kind="tau", precision=emb.precision)


def _parts_are_cliques(g: Graph, part: Sequence[str]) -> bool:
    for side in (U, W):
        members = [v for v in range(g.n) if part[v] == side]
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                if not g.has_edge(u, v):
                    return False
    return True


def special_value_f(beta: Any, a: Any, num: Backend = None) -> Any:
    """Offset from radius 1/2 of the point on the ray at angle -pi/2 + 2 beta
    lying at unit distance from the image of (0, 1 + a)."""
    num = num or FloatBackend()
    s = num.sin(beta)
    return a - num.cos(beta) ** 2 - 2 * a * s * s + num.sqrt(1 - (num.num(1) / 2 - a) ** 2 * num.sin(2 * beta) ** 2)


def special_value_c(beta: Any, a: Any, num: Backend = None) -> Any:
    """Height of the point above (beta, 0) at unit distance from (0, 1 + a)."""
    num = num or FloatBackend()
    return a + 1 - num.sqrt(1 - beta * beta)


def special_value_bounds(beta: Any, a: Any) -> Tuple[Any, Any]:
    lo = a + beta ** 2 / 2 - 7 * beta ** 4 / 6 - 2 * a * a * beta ** 2
    hi = a + beta ** 2 / 2 + beta ** 4 / 2
    return lo, hi


@dataclass
class ComplementResult:
    star: Embedding
    scaled: Embedding
    embedding: Embedding
    q_dprime: Any
    sigma: Any


def complement_pipeline(g: Graph, num: Backend = None,
                        part: Optional[Sequence[str]] = None) -> ComplementResult:
    num = num or mp_backend()
    qd = q_dprime(g.n, num)
    sigma = qd / 3200
    eps = num.sqrt(sigma / (2 * R_CONST))
    star = embed_class_x_star(g, eps, num, part)
    factor = 1 - qd * sigma / 2
    scaled = star.scaled(factor)
    scaled.params.scale = factor
    scaled.params.sigma = sigma
    out = tau_transform(scaled, sigma, star.params.delta)
    out.kind = "class-x-complement"
    out.params.q_dprime = qd
    return ComplementResult(star, scaled, out, qd, sigma)


def embed_class_x_complement(g: Graph, num: Backend = None,
                             part: Optional[Sequence[str]] = None) -> Embedding:
    """Embedding of the co-bipartite complement of G* (cross edges = non-edges of ``g``)."""
    return complement_pipeline(g, num, part).embedding


def complement_target(g: Graph) -> Graph:
    """The graph the complement pipeline represents: parts become cliques and
    the cross relation of ``g`` is complemented."""
    return complement(g)
