"""Independent checks of claimed embeddings.

Nothing here reuses construction code: distances, strip containment and
segment crossings are recomputed from the raw points, in a private
multiprecision context whenever the points carry more than double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import islice
from typing import Any, Dict, List, Optional, Sequence, Tuple

from mpmath.ctx_mp import MPContext

from .graph import Graph, U, W, complement, cycle_graph, from_edge_list, iter_induced, path_graph

DEFAULT_SLACK = 1e-9
SAMPLE_CAP = 10_000
FLOAT_DEADBAND = 1e-12


class CoverageError(ValueError):
    """The embedding does not provide exactly one point per vertex."""


@dataclass
class _Arith:
    """Float or private-mp arithmetic chosen from the embedding's precision."""

    dps: Optional[int]

    def __post_init__(self) -> None:
        self.ctx = None
        if self.dps:
            self.ctx = MPContext()
            self.ctx.dps = self.dps

    def num(self, x: Any):
        return self.ctx.mpf(x) if self.ctx is not None else float(x)

    def sqrt(self, x: Any):
        return self.ctx.sqrt(x) if self.ctx is not None else math.sqrt(x)

    def deadband(self):
        return self.ctx.mpf(10) ** (-(self.dps // 2)) if self.ctx is not None else FLOAT_DEADBAND


def _points(emb: Any, arith: _Arith) -> List[Tuple[Any, Any]]:
    return [(arith.num(x), arith.num(y)) for x, y in emb.points]


def _arith_for(emb: Any) -> _Arith:
    return _Arith(getattr(emb, "precision", None))


@dataclass
class VerificationReport:
    ok: bool
    violations: List[Tuple[int, int, Any, str]] = field(default_factory=list)
    min_edge_slack: Any = math.inf
    min_nonedge_margin: Any = math.inf
    strip_ok: Optional[bool] = None
    convexity_ok: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        def f(x: Any) -> Any:
            return None if x is None else (str(x) if not isinstance(x, float) else x)

        return {
            "ok": self.ok,
            "violations": [[u, v, f(d), rel] for u, v, d, rel in self.violations],
            "min_edge_slack": f(self.min_edge_slack),
            "min_nonedge_margin": f(self.min_nonedge_margin),
            "strip_ok": self.strip_ok,
            "convexity_ok": self.convexity_ok,
        }


def verify_embedding(g: Graph, emb: Any, slack: float = DEFAULT_SLACK, strip: bool = False,
                     convexity: bool = False) -> VerificationReport:
    """Edges need ``d <= 1 + slack``; non-edges need ``d > 1 - slack``.

    ``min_edge_slack`` is ``1 - max edge distance`` and ``min_nonedge_margin``
    is ``min non-edge distance - 1``; callers assert their own bounds on them.
    """
    if slack < 0:
        raise ValueError("slack must be non-negative")
    if len(emb.points) != g.n:
        raise CoverageError(f"embedding has {len(emb.points)} points for {g.n} vertices")
    ar = _arith_for(emb)
    pts = _points(emb, ar)
    one = ar.num(1)
    hi = one + ar.num(slack)
    lo = one - ar.num(slack)
    hi2, lo2 = hi * hi, lo * lo
    viol: List[Tuple[int, int, Any, str]] = []
    max_edge2 = None
    min_non2 = None
    for u in range(g.n):
        ux, uy = pts[u]
        nb = g.adjacency[u]
        for v in range(u + 1, g.n):
            dx, dy = ux - pts[v][0], uy - pts[v][1]
            d2 = dx * dx + dy * dy
            if v in nb:
                if max_edge2 is None or d2 > max_edge2:
                    max_edge2 = d2
                if d2 > hi2:
                    viol.append((u, v, ar.sqrt(d2), "edge"))
            else:
                if min_non2 is None or d2 < min_non2:
                    min_non2 = d2
                if d2 <= lo2:
                    viol.append((u, v, ar.sqrt(d2), "non-edge"))
    rep = VerificationReport(
        ok=not viol,
        violations=viol,
        min_edge_slack=math.inf if max_edge2 is None else one - ar.sqrt(max_edge2),
        min_nonedge_margin=math.inf if min_non2 is None else ar.sqrt(min_non2) - one,
    )
    params = getattr(emb, "params", None)
    if (strip and params is not None and params.delta is not None and params.sigma is not None
            and getattr(emb, "part", None) is not None):
        qd = params.q_dprime if params.q_dprime is not None else 0
        rep.strip_ok = check_strip_conditions(emb, params.delta, params.sigma, qd).ok
    if convexity:
        rep.convexity_ok = check_convexity_constraints(g, emb).ok
    return rep


# ---------------------------------------------------------------------------
# Strip conditions
# ---------------------------------------------------------------------------


@dataclass
class StripReport:
    ok: bool
    containment_ok: bool
    outside: List[int] = field(default_factory=list)
    annulus: List[Tuple[int, int, Any]] = field(default_factory=list)
    min_cross_gap: Any = math.inf     # min |d - 1| over non-exact cross pairs
    exact_pairs: int = 0


def check_strip_conditions(emb: Any, delta: Any, sigma: Any, q_dprime: Any,
                           exact_tol: Any = None) -> StripReport:
    """Lower part in [0, delta] x [-sigma, sigma], upper part in
    [0, delta] x [1 - sigma, 1 + sigma], and every cross distance either
    exactly 1 (within ``exact_tol``) or outside (1 - q''sigma, 1 + q''sigma)."""
    if getattr(emb, "part", None) is None:
        raise ValueError("strip conditions need part labels")
    ar = _arith_for(emb)
    pts = _points(emb, ar)
    delta, sigma, qd = ar.num(delta), ar.num(sigma), ar.num(q_dprime)
    tol = ar.deadband() if exact_tol is None else ar.num(exact_tol)
    outside = []
    for v, (x, y) in enumerate(pts):
        base = 1 if emb.part[v] == W else 0
        if not (0 <= x <= delta and -sigma <= y - base <= sigma):
            outside.append(v)
    band = qd * sigma
    lower = [v for v in range(len(pts)) if emb.part[v] == U]
    upper = [v for v in range(len(pts)) if emb.part[v] == W]
    annulus = []
    gap = None
    exact = 0
    for u in lower:
        ux, uy = pts[u]
        for w in upper:
            dx, dy = ux - pts[w][0], uy - pts[w][1]
            dev = abs(ar.sqrt(dx * dx + dy * dy) - 1)
            if dev <= tol:
                exact += 1
                continue
            if gap is None or dev < gap:
                gap = dev
            if dev < band:
                annulus.append((u, w, dev))
    return StripReport(
        ok=not outside and not annulus,
        containment_ok=not outside,
        outside=outside,
        annulus=annulus,
        min_cross_gap=math.inf if gap is None else gap,
        exact_pairs=exact,
    )


# ---------------------------------------------------------------------------
# Crossing constraints
# ---------------------------------------------------------------------------


def _orient(p, q, r, band) -> int:
    ax, ay = q[0] - p[0], q[1] - p[1]
    bx, by = r[0] - p[0], r[1] - p[1]
    cross = ax * by - ay * bx
    scale = (ax * ax + ay * ay) * (bx * bx + by * by)
    if cross * cross <= band * band * scale:
        return 0
    return 1 if cross > 0 else -1


def segments_cross(p1, p2, p3, p4, band: Any = FLOAT_DEADBAND) -> Optional[bool]:
    """Whether [p1,p2] and [p3,p4] properly cross; ``None`` when a triple is
    collinear within the (relative) deadband."""
    o = (_orient(p1, p2, p3, band), _orient(p1, p2, p4, band),
         _orient(p3, p4, p1, band), _orient(p3, p4, p2, band))
    if 0 in o:
        return None
    return o[0] != o[1] and o[2] != o[3]


@dataclass
class ConvexityReport:
    ok: bool
    checked: Dict[str, int] = field(default_factory=dict)
    counterexample: Optional[Tuple[str, Tuple[int, ...], str]] = None
    degenerate: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)


def _unique_copies(host: Graph, pattern: Graph, key, cap: int):
    seen = set()
    for mapping in iter_induced(host, pattern):
        img = tuple(mapping[i] for i in range(pattern.n))
        k = key(img)
        if k in seen:
            continue
        seen.add(k)
        yield img
        if len(seen) >= cap:
            return


def check_convexity_constraints(g: Graph, emb: Any, cap: int = SAMPLE_CAP) -> ConvexityReport:
    """Induced C4s must have crossing diagonals; induced 2K2s of the complement
    must have crossing edge pairs; induced P6 ``v1..v6`` of the complement must
    have [p2,p3] crossing [p4,p5].  At most ``cap`` copies per form are checked
    in deterministic enumeration order."""
    ar = _arith_for(emb)
    pts = _points(emb, ar)
    band = ar.deadband()
    rep = ConvexityReport(ok=True)
    comp = complement(g)

    def test(form: str, segs: Tuple[int, int, int, int], img: Tuple[int, ...]) -> None:
        a, b, c, d = segs
        res = segments_cross(pts[a], pts[b], pts[c], pts[d], band)
        rep.checked[form] = rep.checked.get(form, 0) + 1
        if res is None:
            rep.degenerate.append((form, img))
            rep.ok = False
        elif not res and rep.counterexample is None:
            rep.counterexample = (form, img, f"[{a},{b}] and [{c},{d}] do not cross")
            rep.ok = False

    c4 = cycle_graph(4)
    for img in _unique_copies(g, c4, lambda t: frozenset(t), cap):
        test("C4", (img[0], img[2], img[1], img[3]), img)
    two_k2 = from_edge_list(4, [(0, 2), (1, 3)])
    for img in _unique_copies(comp, two_k2, lambda t: frozenset((frozenset((t[0], t[2])), frozenset((t[1], t[3])))), cap):
        test("2K2", (img[0], img[2], img[1], img[3]), img)
    p6 = path_graph(6)
    for img in _unique_copies(comp, p6, lambda t: min(t, t[::-1]), cap):
        test("P6", (img[1], img[2], img[3], img[4]), img)
    return rep
