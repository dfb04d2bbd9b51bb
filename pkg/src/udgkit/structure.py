"""Recognition and decomposition of the hexagonal-caterpillar class.

The class holds the bipartite graphs whose only chordless cycles are
hexagons and which contain none of S3,3,3, C6+3c (F4), C6+3nc (F2) and
C6+2l2 (F3) as induced subgraphs.  Every member decomposes into a chain of
hexagonal strips joined by lobster spines; :func:`recognize_class_x` either
returns that decomposition or an induced forbidden witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .catalog import catalog_entry
from .graph import (
    BipartiteGraph,
    Graph,
    PendantExpansion,
    connected_components,
    contains_induced,
    from_edge_list,
    induced_subgraph,
    is_induced_mapping,
    iter_chordless_cycles,
    pendant_twin_reduce,
    shortest_odd_cycle,
    two_coloring,
    two_connected_components,
    U,
    W,
)

DISJOINT = "disjoint"
ONE_VERTEX = "one-vertex"
SHARED_EDGE = "shared-edge"
DIAGONAL_PAIR = "diagonal-pair"
P4_SHARE = "P4-share"

# name used in witnesses -> catalog entry
_STRUCTURE_PATTERNS = (("S3,3,3", "S3,3,3"), ("C6+3c", "F4"), ("C6+3nc", "F2"), ("C6+2l2", "F3"))


class StructureError(Exception):
    """A decomposition step failed; the input is expected to hold a witness."""


class RecognitionInternalError(RuntimeError):
    """Decomposition failed but no forbidden witness exists (a bug)."""


class InvalidIntersection(StructureError):
    def __init__(self, message: str, vertices: frozenset) -> None:
        super().__init__(message)
        self.vertices = vertices


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """Induced forbidden subgraph: ``vertices[i]`` is the host image of
    pattern vertex ``i`` (for cycles: the cycle in order)."""

    name: str
    vertices: Tuple[int, ...]

    def pattern(self) -> Graph:
        if self.name.startswith("C") and self.name[1:].isdigit():
            k = int(self.name[1:])
            return from_edge_list(k, [(i, (i + 1) % k) for i in range(k)])
        return catalog_entry(dict(_STRUCTURE_PATTERNS)[self.name]).graph

    def verify(self, g: Graph) -> bool:
        mapping = {i: v for i, v in enumerate(self.vertices)}
        return is_induced_mapping(g, self.pattern(), mapping)

    def to_dict(self) -> dict:
        return {"name": self.name, "vertices": list(self.vertices)}


def _cycle_witness(cycle: Sequence[int]) -> Witness:
    return Witness(f"C{len(cycle)}", tuple(cycle))


def find_cycle_witness(g: Graph) -> Optional[Witness]:
    """Odd cycle or chordless cycle of length other than six."""
    odd = shortest_odd_cycle(g)
    if odd is not None:
        return _cycle_witness(odd)
    for cyc in iter_chordless_cycles(g, max(8, 2 * g.n)):
        if len(cyc) != 6:
            return _cycle_witness(cyc)
    return None


def find_forbidden_witness(g: Graph) -> Optional[Witness]:
    """Exhaustive search for any forbidden induced subgraph of the class."""
    w = find_cycle_witness(g)
    if w is not None:
        return w
    for name, entry in _STRUCTURE_PATTERNS:
        mapping = contains_induced(g, catalog_entry(entry).graph)
        if mapping is not None:
            return Witness(name, tuple(mapping[i] for i in range(len(mapping))))
    return None


# ---------------------------------------------------------------------------
# Hexagons
# ---------------------------------------------------------------------------


def _hex_distance(g: Graph, hexagon: frozenset, u: int, v: int) -> int:
    if u == v:
        return 0
    frontier, seen, d = {u}, {u}, 0
    while frontier:
        d += 1
        nxt = set()
        for x in frontier:
            for y in g.neighbors(x):
                if y in hexagon and y not in seen:
                    if y == v:
                        return d
                    seen.add(y)
                    nxt.add(y)
        frontier = nxt
    return -1


def hexagon_intersection_type(h1: Iterable[int], h2: Iterable[int], g: Graph) -> str:
    """Classify how two hexagons of ``g`` meet.

    Raises :class:`InvalidIntersection` for any configuration that cannot
    occur inside the class (the union then holds a short or long cycle).
    """
    a, b = frozenset(h1), frozenset(h2)
    s = a & b
    union = a | b
    extra = [
        (u, v) for u in union for v in g.neighbors(u)
        if v in union and u < v and not ({u, v} <= a or {u, v} <= b)
    ]
    if extra and s:
        raise InvalidIntersection(f"edge {extra[0]} joins the two hexagons", union)
    if not s:
        return DISJOINT
    if len(s) == 1:
        return ONE_VERTEX
    if len(s) == 2:
        u, v = sorted(s)
        if g.has_edge(u, v):
            return SHARED_EDGE
        if _hex_distance(g, a, u, v) == 3 and _hex_distance(g, b, u, v) == 3:
            return DIAGONAL_PAIR
    if len(s) == 4 and a != b:
        sub, _ = induced_subgraph(g, s)
        degs = sorted(sub.degree(v) for v in range(4))
        if sub.m == 3 and degs == [1, 1, 2, 2]:
            return P4_SHARE
    raise InvalidIntersection(f"hexagons share {sorted(s)}", union)


# ---------------------------------------------------------------------------
# Decomposition records
# ---------------------------------------------------------------------------


@dataclass
class HexUnit:
    """One C_{6,k} block: hubs ``a`` and ``b`` joined by paths ``a-a_j-b_j-b``.

    ``paths[0]`` holds ``(a_1, b_1)`` and ``paths[1]`` holds ``(a_2, b_2)``;
    ``{a, a_1}`` is the left edge and ``{b, b_2}`` the right edge.
    """

    a: int
    b: int
    paths: List[Tuple[int, int]]

    @property
    def k(self) -> int:
        return len(self.paths)

    @property
    def left_edge(self) -> Tuple[int, int]:
        return (self.a, self.paths[0][0])

    @property
    def right_edge(self) -> Tuple[int, int]:
        return (self.b, self.paths[1][1])

    def vertices(self) -> List[int]:
        out = [self.a, self.b]
        for x, y in self.paths:
            out += [x, y]
        return out

    def edges(self) -> List[Tuple[int, int]]:
        out = []
        for x, y in self.paths:
            out += [(self.a, x), (x, y), (y, self.b)]
        return out

    def reversed(self) -> "HexUnit":
        paths = [(y, x) for x, y in self.paths]
        paths[0], paths[1] = paths[1], paths[0]
        return HexUnit(self.b, self.a, paths)

    def mapped(self, f) -> "HexUnit":
        return HexUnit(f(self.a), f(self.b), [(f(x), f(y)) for x, y in self.paths])


@dataclass
class HexStrip:
    """A chain of units; the right edge of unit ``i`` is the left edge of ``i+1``."""

    units: List[HexUnit]
    left_port: Optional[int] = None
    right_port: Optional[int] = None

    @property
    def ks(self) -> List[int]:
        return [u.k for u in self.units]

    @property
    def ds(self) -> List[int]:
        return [1 if self.units[i].paths[1][1] == self.units[i + 1].a else -1
                for i in range(len(self.units) - 1)]

    @property
    def left_edge(self) -> Tuple[int, int]:
        return self.units[0].left_edge

    @property
    def right_edge(self) -> Tuple[int, int]:
        return self.units[-1].right_edge

    def vertices(self) -> List[int]:
        seen: Dict[int, None] = {}
        for u in self.units:
            for v in u.vertices():
                seen[v] = None
        return list(seen)

    def edges(self) -> List[Tuple[int, int]]:
        out = set()
        for u in self.units:
            for x, y in u.edges():
                out.add((min(x, y), max(x, y)))
        return sorted(out)

    def corners(self) -> List[int]:
        out: Dict[int, None] = {}
        for u in self.units:
            for v in u.left_edge + u.right_edge:
                out[v] = None
        return list(out)

    def roles(self) -> Dict[int, str]:
        """Role tags ``a^i``, ``b^i``, ``a^i_j``, ``b^i_j`` (first unit wins on shared vertices)."""
        tags: Dict[int, str] = {}
        for i, u in enumerate(self.units, start=1):
            tags.setdefault(u.a, f"a^{i}")
            tags.setdefault(u.b, f"b^{i}")
            for j, (x, y) in enumerate(u.paths, start=1):
                tags.setdefault(x, f"a^{i}_{j}")
                tags.setdefault(y, f"b^{i}_{j}")
        return tags

    def reversed(self) -> "HexStrip":
        return HexStrip([u.reversed() for u in reversed(self.units)], self.right_port, self.left_port)

    def mapped(self, f) -> "HexStrip":
        return HexStrip(
            [u.mapped(f) for u in self.units],
            None if self.left_port is None else f(self.left_port),
            None if self.right_port is None else f(self.right_port),
        )

    def check_gluing(self) -> None:
        for i in range(len(self.units) - 1):
            if set(self.units[i].right_edge) != set(self.units[i + 1].left_edge):
                raise StructureError(f"units {i} and {i + 1} are not glued along an edge")


@dataclass
class Leg:
    vertex: int
    foot: Optional[int] = None


Element = Tuple[str, int]  # ("v", vertex) or ("strip", strip index)


@dataclass
class CaterpillarDecomposition:
    """Structural certificate of class membership.

    ``chains`` holds one element sequence per connected component: spine /
    gluing vertices ``("v", id)`` and strips ``("strip", index)``.  A strip's
    ``left_port`` (``right_port``) equals the vertex element directly before
    (after) it.  ``pendant_twins`` maps every vertex removed by the pendant-twin
    reduction to the kept pendant it duplicates.
    """

    n: int
    part: Tuple[str, ...]
    strips: List[HexStrip] = field(default_factory=list)
    chains: List[List[Element]] = field(default_factory=list)
    legs: Dict[int, List[Leg]] = field(default_factory=dict)
    corner_pendants: Dict[int, List[int]] = field(default_factory=dict)
    pendant_twins: Dict[int, int] = field(default_factory=dict)
    reduced: bool = False

    # -- derived views -------------------------------------------------
    def spine_vertices(self) -> List[int]:
        return [x for chain in self.chains for kind, x in chain if kind == "v"]

    def gluing_vertices(self) -> List[int]:
        out = []
        for s in self.strips:
            out += [p for p in (s.left_port, s.right_port) if p is not None]
        return sorted(set(out))

    def pieces(self) -> List[dict]:
        """Hexagonal caterpillars and lobsters in chain order."""
        out = []
        for ci, chain in enumerate(self.chains):
            spine: List[int] = []
            for kind, x in chain:
                if kind == "v":
                    spine.append(x)
                    continue
                if len(spine) > 1 or (spine and spine[-1] != self.strips[x].left_port):
                    out.append({"component": ci, "kind": "lobster", "spine": list(spine)})
                strip = self.strips[x]
                out.append({"component": ci, "kind": "hexcat", "strip": x,
                            "gluing": [strip.left_port, strip.right_port]})
                spine = [strip.right_port] if strip.right_port is not None else []
            if len(spine) > 1 or (spine and not any(k == "strip" for k, _ in chain)):
                out.append({"component": ci, "kind": "lobster", "spine": list(spine)})
        return out

    def twin_classes(self) -> List[List[Tuple[int, Optional[int]]]]:
        """Parallel-edge classes with more than one member (structural twins).

        Each member is ``(x, y)``: an r-path edge ``(a_j, b_j)`` or a leg edge
        ``(leg, foot)``; a footless leg that must be drawn as a twin of a footed
        one appears as ``(leg, None)``.
        """
        classes = []
        for s in self.strips:
            for u in s.units:
                if u.k > 3:
                    classes.append([tuple(p) for p in u.paths[2:]])
        for v in sorted(self.legs):
            legs = self.legs[v]
            footed = [(l.vertex, l.foot) for l in legs if l.foot is not None]
            footless = [(l.vertex, None) for l in legs if l.foot is None]
            if footed and len(footed) + len(footless) > 1:
                classes.append(footed + footless)
        return classes

    def mapped(self, f) -> "CaterpillarDecomposition":
        """Relabel every vertex id through ``f`` (``n`` and ``part`` unchanged)."""
        return CaterpillarDecomposition(
            n=self.n,
            part=self.part,
            strips=[s.mapped(f) for s in self.strips],
            chains=[[(k, f(x) if k == "v" else x) for k, x in c] for c in self.chains],
            legs={f(v): [Leg(f(l.vertex), None if l.foot is None else f(l.foot)) for l in ls]
                  for v, ls in self.legs.items()},
            corner_pendants={f(c): [f(p) for p in ps] for c, ps in self.corner_pendants.items()},
            pendant_twins={f(a): f(b) for a, b in self.pendant_twins.items()},
            reduced=self.reduced,
        )

    # -- serialisation -----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "part": "".join(self.part),
            "strips": [
                {
                    "ks": s.ks,
                    "ds": s.ds,
                    "units": [{"a": u.a, "b": u.b, "paths": [list(p) for p in u.paths]} for u in s.units],
                    "left_port": s.left_port,
                    "right_port": s.right_port,
                    "roles": {str(v): r for v, r in sorted(s.roles().items())},
                }
                for s in self.strips
            ],
            "chains": [[[k, x] for k, x in c] for c in self.chains],
            "legs": {str(v): [[l.vertex, l.foot] for l in ls] for v, ls in sorted(self.legs.items())},
            "corner_pendants": {str(c): ps for c, ps in sorted(self.corner_pendants.items())},
            "pendant_twins": {str(a): b for a, b in sorted(self.pendant_twins.items())},
            "twin_classes": [[list(e) for e in cls] for cls in self.twin_classes()],
            "pieces": self.pieces(),
            "reduced": self.reduced,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CaterpillarDecomposition":
        strips = [
            HexStrip(
                [HexUnit(u["a"], u["b"], [tuple(p) for p in u["paths"]]) for u in s["units"]],
                s.get("left_port"),
                s.get("right_port"),
            )
            for s in data["strips"]
        ]
        return cls(
            n=data["n"],
            part=tuple(data["part"]),
            strips=strips,
            chains=[[(k, x) for k, x in c] for c in data["chains"]],
            legs={int(v): [Leg(a, b) for a, b in ls] for v, ls in data["legs"].items()},
            corner_pendants={int(c): list(ps) for c, ps in data["corner_pendants"].items()},
            pendant_twins={int(a): b for a, b in data["pendant_twins"].items()},
            reduced=data.get("reduced", False),
        )


def reassemble(decomp: CaterpillarDecomposition) -> Graph:
    """Rebuild the graph a decomposition describes (including pendant twins)."""
    edges = set()

    def add(u: int, v: int) -> None:
        edges.add((min(u, v), max(u, v)))

    for s in decomp.strips:
        for e in s.edges():
            add(*e)
    for chain in decomp.chains:
        prev: Optional[int] = None
        for kind, x in chain:
            if kind == "v":
                if prev is not None and prev != x:
                    add(prev, x)
                prev = x
            else:
                prev = decomp.strips[x].right_port
    for v, ls in decomp.legs.items():
        for leg in ls:
            add(v, leg.vertex)
            if leg.foot is not None:
                add(leg.vertex, leg.foot)
    for c, ps in decomp.corner_pendants.items():
        for p in ps:
            add(c, p)
    nbr: Dict[int, List[int]] = {}
    for u, v in edges:
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    for extra, rep in decomp.pendant_twins.items():
        add(extra, nbr[rep][0])
    return from_edge_list(decomp.n, sorted(edges))


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.p = list(range(n))

    def find(self, x: int) -> int:
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


def _hexagon_cycle(g: Graph, hexagon: frozenset) -> List[int]:
    start = min(hexagon)
    order = [start]
    prev = -1
    while len(order) < 6:
        cur = order[-1]
        nxt = min(v for v in g.neighbors(cur) if v in hexagon and v != prev and v not in order[1:])
        prev = cur
        order.append(nxt)
    return order


@dataclass
class _RawUnit:
    vertices: frozenset
    hexagons: List[frozenset]
    hubs: Tuple[int, ...]              # empty for a plain hexagon
    paths: List[Tuple[int, int]]       # for hubbed units: (x adjacent to hubs[0], y adjacent to hubs[1])
    glue: List[Tuple[int, int]] = field(default_factory=list)


def _raw_unit(g: Graph, hexes: List[frozenset]) -> _RawUnit:
    verts = frozenset().union(*hexes)
    if len(hexes) == 1:
        return _RawUnit(verts, hexes, (), [])
    sub, keep = induced_subgraph(g, verts)
    deg = {keep[i]: sub.degree(i) for i in range(sub.n)}
    hubs = tuple(sorted(v for v in verts if deg[v] >= 3))
    if len(hubs) != 2 or g.has_edge(*hubs):
        raise StructureError("block of hexagons is not a C6,k")
    h0, h1 = hubs
    k = deg[h0]
    if deg[h1] != k or any(deg[v] != 2 for v in verts if v not in hubs):
        raise StructureError("block of hexagons is not a C6,k")
    paths = []
    for x in sorted(g.neighbors(h0)):
        if x not in verts:
            continue
        ys = [y for y in g.neighbors(x) if y in verts and y != h0]
        if len(ys) != 1 or not g.has_edge(ys[0], h1):
            raise StructureError("block of hexagons is not a C6,k")
        paths.append((x, ys[0]))
    if len(verts) != 2 + 2 * k or len(hexes) != k * (k - 1) // 2:
        raise StructureError("block of hexagons is not a C6,k")
    return _RawUnit(verts, hexes, hubs, paths)


def _outside(g: Graph, block: frozenset, v: int) -> Tuple[List[int], List[int]]:
    """Neighbours of ``v`` outside ``block``: (pendant leaves, others)."""
    leaves, big = [], []
    for x in sorted(g.neighbors(v)):
        if x in block:
            continue
        (leaves if g.degree(x) == 1 else big).append(x)
    return leaves, big


def _orient_units(units: List[_RawUnit], glue_units: Dict[Tuple[int, int], List[int]]) -> List[int]:
    nbrs: Dict[int, List[int]] = {i: [] for i in range(len(units))}
    for e, us in glue_units.items():
        if len(us) != 2:
            raise StructureError(f"edge {e} is shared by {len(us)} units")
        nbrs[us[0]].append(us[1])
        nbrs[us[1]].append(us[0])
    if len(units) == 1:
        return [0]
    ends = [i for i in nbrs if len(nbrs[i]) == 1]
    if any(len(v) > 2 for v in nbrs.values()) or len(ends) != 2:
        raise StructureError("units do not form a chain")
    start = min(ends, key=lambda i: min(units[i].vertices))
    order, prev = [start], -1
    while len(order) < len(units):
        cur = order[-1]
        nxt = [j for j in nbrs[cur] if j != prev]
        if len(nxt) != 1:
            raise StructureError("units do not form a chain")
        prev = cur
        order.append(nxt[0])
    return order


def _glue_between(units: List[_RawUnit], i: int, j: int) -> Tuple[int, int]:
    common = [e for e in units[i].glue if e in units[j].glue]
    if len(common) != 1:
        raise StructureError("consecutive units must share exactly one edge")
    return common[0]


def _hex_opposite(cycle: List[int], edge: Tuple[int, int]) -> Tuple[int, int]:
    i, j = cycle.index(edge[0]), cycle.index(edge[1])
    if (j - i) % 6 == 1:
        lo = i
    elif (i - j) % 6 == 1:
        lo = j
    else:
        raise StructureError("not a hexagon edge")
    return (cycle[(lo + 3) % 6], cycle[(lo + 4) % 6])


def _hex_unit_from_edges(g: Graph, raw: _RawUnit, left: Tuple[int, int], right: Tuple[int, int],
                         a: int) -> HexUnit:
    """Roles of a plain hexagon given its left/right edges and the hub ``a`` in ``left``."""
    cycle = _hexagon_cycle(g, raw.hexagons[0])
    if set(_hex_opposite(cycle, left)) != set(right):
        raise StructureError("end edges of a hexagon must be opposite")
    a1 = left[1] if left[0] == a else left[0]
    b1 = next(v for v in g.neighbors(a1) if v in raw.vertices and v != a)
    b = next(v for v in g.neighbors(b1) if v in raw.vertices and v != a1)
    if b not in right:
        raise StructureError("hexagon orientation mismatch")
    b2 = right[1] if right[0] == b else right[0]
    a2 = next(v for v in g.neighbors(a) if v in raw.vertices and v != a1)
    if not g.has_edge(a2, b2):
        raise StructureError("hexagon orientation mismatch")
    return HexUnit(a, b, [(a1, b1), (a2, b2)])


def _hub_unit(raw: _RawUnit, a: int, a1: int, b2: int) -> HexUnit:
    """Roles of a hubbed unit given hub ``a``, the left non-hub ``a1`` and right non-hub ``b2``."""
    if a not in raw.hubs:
        raise StructureError("left edge of a C6,k must contain a hub")
    flip = a != raw.hubs[0]
    paths = [(y, x) if flip else (x, y) for x, y in raw.paths]
    b = raw.hubs[0] if flip else raw.hubs[1]
    p1 = [p for p in paths if p[0] == a1]
    p2 = [p for p in paths if p[1] == b2]
    if len(p1) != 1 or len(p2) != 1 or p1[0] == p2[0]:
        raise StructureError("end edges of a C6,k must lie on different paths")
    rest = sorted(p for p in paths if p not in (p1[0], p2[0]))
    return HexUnit(a, b, [p1[0], p2[0]] + rest)


def _build_strip(g: Graph, block: frozenset, hexes: List[frozenset]) -> HexStrip:
    uf = _UnionFind(len(hexes))
    shared: List[Tuple[int, int, Tuple[int, int]]] = []
    for i, j in combinations(range(len(hexes)), 2):
        kind = hexagon_intersection_type(hexes[i], hexes[j], g)
        if kind in (P4_SHARE, DIAGONAL_PAIR):
            uf.union(i, j)
        elif kind == SHARED_EDGE:
            e = tuple(sorted(hexes[i] & hexes[j]))
            shared.append((i, j, e))  # type: ignore[arg-type]
    groups: Dict[int, List[int]] = {}
    for i in range(len(hexes)):
        groups.setdefault(uf.find(i), []).append(i)
    roots = sorted(groups)
    unit_of = {}
    units: List[_RawUnit] = []
    for r in roots:
        for i in groups[r]:
            unit_of[i] = len(units)
        units.append(_raw_unit(g, [hexes[i] for i in groups[r]]))
    if frozenset().union(*(u.vertices for u in units)) != block:
        raise StructureError("block is not covered by hexagons")
    glue_units: Dict[Tuple[int, int], List[int]] = {}
    for i, j, e in shared:
        ui, uj = unit_of[i], unit_of[j]
        if ui == uj:
            raise StructureError("hexagons of one unit share only an edge")
        lst = glue_units.setdefault(e, [])
        for u in (ui, uj):
            if u not in lst:
                lst.append(u)
    for e, us in glue_units.items():
        for u in us:
            units[u].glue.append(e)
    order = _orient_units(units, glue_units)

    # attachments
    att = {v: _outside(g, block, v) for v in block}
    attached = {v for v in block if att[v][0] or att[v][1]}
    big = {v for v in block if att[v][1]}

    n_units = len(order)
    lefts: List[Optional[Tuple[int, int]]] = [None] * n_units
    rights: List[Optional[Tuple[int, int]]] = [None] * n_units
    for pos in range(n_units - 1):
        e = _glue_between(units, order[pos], order[pos + 1])
        rights[pos] = e
        lefts[pos + 1] = e

    def end_choice_hex(raw: _RawUnit, fixed: Optional[Tuple[int, int]]) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
        cycle = _hexagon_cycle(g, raw.hexagons[0])
        if fixed is not None:
            return [(_hex_opposite(cycle, fixed), fixed)]
        out = []
        for i in range(3):
            e1 = (cycle[i], cycle[i + 1])
            out.append((e1, _hex_opposite(cycle, e1)))
        return out

    built: List[HexUnit] = []
    for pos, ui in enumerate(order):
        raw = units[ui]
        left, right = lefts[pos], rights[pos]
        if not raw.hubs:
            if left is None or right is None:
                if left is None and right is None:
                    options = end_choice_hex(raw, None)
                elif left is None:
                    options = [(e, right) for e, _ in end_choice_hex(raw, right)]
                else:
                    options = [(left, e) for e, _ in end_choice_hex(raw, left)]
                own = attached & raw.vertices
                good = [
                    (l, r) for l, r in options
                    if own <= set(l) | set(r) | _glued(lefts[pos], rights[pos])
                    and len(big & set(l)) <= 1 and len(big & set(r)) <= 1
                ]
                if not good:
                    raise StructureError("attachments of an end hexagon do not fit two opposite edges")
                left, right = good[0]
            if pos > 0:
                a = built[-1].paths[1][1]
                if a not in left:
                    a = built[-1].b
            else:
                ports = [v for v in left if v in big]
                a = ports[0] if ports else min(left)
            built.append(_hex_unit_from_edges(g, raw, left, right, a))
            continue
        h0, h1 = raw.hubs
        if left is not None:
            a = next((h for h in raw.hubs if h in left), None)
            if a is None:
                raise StructureError("glue edge of a C6,k misses the hubs")
            a1 = left[1] if left[0] == a else left[0]
        else:
            a = a1 = None  # type: ignore[assignment]
        if right is not None:
            b = next((h for h in raw.hubs if h in right), None)
            if b is None:
                raise StructureError("glue edge of a C6,k misses the hubs")
            b2 = right[1] if right[0] == b else right[0]
        else:
            b = b2 = None  # type: ignore[assignment]
        if a is None and b is None:
            a, b = h0, h1
        elif a is None:
            a = h0 if b == h1 else h1
        elif b is None:
            b = h0 if a == h1 else h1
        if a == b:
            raise StructureError("both glue edges of a C6,k use the same hub")
        # path (x on a's side, y on b's side)
        paths = [(x, y) if raw.hubs[0] == a else (y, x) for x, y in raw.paths]
        a_hits = [p for p in paths if p[0] in attached and p[1] != b2]
        b_hits = [p for p in paths if p[1] in attached and p[0] != a1]
        if a1 is None and len(a_hits) > 1 or b2 is None and len(b_hits) > 1:
            raise StructureError("two same-side vertices of an end C6,k carry attachments")
        if a1 is None:
            avoid = {p for p in paths if p[1] == b2} | (set(b_hits) if b2 is None else set())
            cands = a_hits or sorted(p for p in paths if p not in avoid)
            if not cands:
                raise StructureError("attachments of an end C6,k share one path")
            a1 = cands[0][0]
        if b2 is None:
            cands = [p for p in b_hits if p[0] != a1] or sorted(p for p in paths if p[0] != a1)
            if b_hits and cands[0] not in b_hits:
                raise StructureError("attachments of an end C6,k share one path")
            b2 = cands[0][1]
        built.append(_hub_unit(raw, a, a1, b2))

    strip = HexStrip(built)
    strip.check_gluing()

    # attachment rules
    corners = set(strip.corners())
    ends = set(strip.left_edge) | set(strip.right_edge)
    for v in attached:
        if v not in corners:
            raise StructureError(f"non-corner strip vertex {v} has outside neighbours")
        if v in big and v not in ends:
            raise StructureError(f"inner corner {v} carries a non-pendant attachment")
    lp = [v for v in strip.left_edge if v in big]
    rp = [v for v in strip.right_edge if v in big]
    if len(lp) > 1 or len(rp) > 1:
        raise StructureError("both vertices of an end edge carry trees")
    strip.left_port = lp[0] if lp else None
    strip.right_port = rp[0] if rp else None
    if set(strip.edges()) != {e for e in _block_edges(g, block)}:
        raise StructureError("strip does not reproduce its block")
    return strip


def _glued(left: Optional[Tuple[int, int]], right: Optional[Tuple[int, int]]) -> set:
    out = set()
    for e in (left, right):
        if e is not None:
            out.update(e)
    return out


def _block_edges(g: Graph, block: frozenset) -> List[Tuple[int, int]]:
    return [(u, v) for u in block for v in g.neighbors(u) if v in block and u < v]


def _prune(nodes: set, adj: Dict[int, set], protected: set) -> set:
    drop = {v for v in nodes if v not in protected and len(adj[v] & nodes) <= 1}
    return nodes - drop


def _decompose_reduced(g: Graph, part: Tuple[str, ...]) -> CaterpillarDecomposition:
    n = g.n
    hexes = [frozenset(c) for c in iter_chordless_cycles(g, max(8, 2 * n)) if len(c) == 6]
    blocks = [b for b in two_connected_components(g) if len(b) >= 3]
    strips: List[HexStrip] = []
    strip_of: Dict[int, List[int]] = {}
    for block in sorted(blocks, key=min):
        inside = [h for h in hexes if h <= block]
        strip = _build_strip(g, block, inside)
        for v in strip.vertices():
            strip_of.setdefault(v, []).append(len(strips))
        strips.append(strip)

    ports = set()
    corner_pendants: Dict[int, List[int]] = {}
    for s in strips:
        block = frozenset(s.vertices())
        for c in s.corners():
            if c in (s.left_port, s.right_port):
                continue
            leaves, _ = _outside(g, block, c)
            if leaves:
                corner_pendants[c] = leaves
        ports.update(p for p in (s.left_port, s.right_port) if p is not None)
    for v, ss in strip_of.items():
        if len(ss) > 1 and v not in ports:
            raise StructureError(f"vertex {v} joins strips without being a gluing vertex")

    # reduced tree: strips become virtual edges between their end nodes
    def end_node(si: int, side: int) -> int:
        s = strips[si]
        port = s.left_port if side == 0 else s.right_port
        return port if port is not None else n + 2 * si + side

    pendant_set = {p for ps in corner_pendants.values() for p in ps}
    in_strip = set(strip_of)
    nodes = {v for v in range(n) if (v not in in_strip or v in ports) and v not in pendant_set}
    adj: Dict[int, set] = {v: set() for v in nodes}
    virtual_edges: Dict[frozenset, int] = {}
    for si in range(len(strips)):
        x, y = end_node(si, 0), end_node(si, 1)
        for z in (x, y):
            if z not in adj:
                adj[z] = set()
                nodes.add(z)
        adj[x].add(y)
        adj[y].add(x)
        virtual_edges[frozenset((x, y))] = si
    for u in range(n):
        if u not in nodes:
            continue
        for v in g.neighbors(u):
            if v in nodes and u < v:
                if set(strip_of.get(u, ())) & set(strip_of.get(v, ())):
                    continue
                adj[u].add(v)
                adj[v].add(u)
    protected = set(ports) | {z for z in nodes if z >= n}

    chains: List[List[Element]] = []
    legs: Dict[int, List[Leg]] = {}
    seen: set = set()
    for start in sorted(nodes):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        n_edges = sum(len(adj[v] & comp) for v in comp) // 2
        if n_edges != len(comp) - 1:
            raise StructureError("reduced tree has a cycle")
        prot = protected & comp
        r1 = _prune(comp, adj, prot)
        r2 = _prune(r1, adj, prot)
        spine = r2 or r1 or {min(comp)}
        if not prot <= spine:
            raise StructureError("gluing vertices fall off the spine")
        if any(len(adj[v] & spine) > 2 for v in spine):
            raise StructureError("spine is not a path (S3,3,3 expected)")
        path = _order_path(spine, adj, n, strips, virtual_edges)
        chain: List[Element] = []
        for idx, v in enumerate(path):
            if v < n:
                chain.append(("v", v))
            if idx + 1 < len(path):
                key = frozenset((v, path[idx + 1]))
                if key in virtual_edges:
                    si = virtual_edges[key]
                    if end_node(si, 0) != v:
                        strips[si] = strips[si].reversed()
                    chain.append(("strip", si))
        chains.append(chain)
        for v in spine:
            if v >= n:
                continue
            for l in sorted(adj[v] - spine):
                feet = sorted(adj[l] - {v})
                if len(feet) > 1:
                    raise StructureError(f"leg {l} has several feet after reduction")
                if feet and len(adj[feet[0]]) != 1:
                    raise StructureError(f"vertex {feet[0]} is too far from the spine")
                legs.setdefault(v, []).append(Leg(l, feet[0] if feet else None))
    # isolated strip-free vertices never enter ``nodes`` only if pendant; all others covered
    return CaterpillarDecomposition(
        n=n, part=part, strips=strips, chains=chains, legs=legs,
        corner_pendants=corner_pendants,
    )


def _order_path(spine: set, adj: Dict[int, set], n: int, strips: List[HexStrip],
                virtual_edges: Dict[frozenset, int]) -> List[int]:
    if len(spine) == 1:
        return list(spine)
    ends = sorted(v for v in spine if len(adj[v] & spine) == 1)
    if len(ends) != 2:
        raise StructureError("spine is not a path")

    def walk(s: int) -> List[int]:
        out, prev = [s], -1
        while len(out) < len(spine):
            nxt = [u for u in adj[out[-1]] & spine if u != prev]
            prev = out[-1]
            out.append(nxt[0])
        return out

    def key(path: List[int]) -> List[int]:
        out = []
        for v in path:
            if v < n:
                out.append(v)
            else:
                s = strips[(v - n) // 2]
                out.append(min(s.left_edge if (v - n) % 2 == 0 else s.right_edge))
        return out

    fwd = walk(ends[0])
    bwd = fwd[::-1]
    return fwd if key(fwd) <= key(bwd) else bwd


@dataclass
class Recognition:
    """Outcome of :func:`recognize_class_x`: exactly one field is set."""

    decomposition: Optional[CaterpillarDecomposition] = None
    witness: Optional[Witness] = None

    @property
    def accepted(self) -> bool:
        return self.decomposition is not None

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "decomposition": None if self.decomposition is None else self.decomposition.to_dict(),
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def recognize_class_x(g: Graph, part: Optional[Sequence[str]] = None) -> Recognition:
    """Decompose ``g`` or return an induced forbidden witness."""
    w = find_cycle_witness(g)
    if w is not None:
        return Recognition(witness=w)
    if part is None:
        part = two_coloring(g)
    assert part is not None  # bipartite: no odd cycle
    bip = BipartiteGraph(g, tuple(part))
    reduced, expansion = pendant_twin_reduce(bip)
    try:
        dec = _decompose_reduced(reduced.graph, reduced.part)
    except StructureError as exc:
        w = find_forbidden_witness(g)
        if w is None:
            raise RecognitionInternalError(f"decomposition failed without a witness: {exc}") from exc
        return Recognition(witness=w)
    kept = expansion.kept
    full = dec.mapped(lambda v: kept[v] if v < len(kept) else v)
    full.n = g.n
    full.part = tuple(part)
    full.pendant_twins = dict(expansion.collapsed)
    full.reduced = bool(expansion.collapsed)
    rebuilt = reassemble(full)
    if rebuilt.adjacency != g.adjacency:
        raise RecognitionInternalError("reassembled decomposition differs from the input")
    return Recognition(decomposition=full)


def in_class_x(g: Graph) -> bool:
    return recognize_class_x(g).accepted


# ---------------------------------------------------------------------------
# Twin edges (literal definition)
# ---------------------------------------------------------------------------


def are_twin_edges(g: BipartiteGraph, e: Tuple[int, int], f: Tuple[int, int]) -> bool:
    """``f`` is a twin of ``e``: cross neighbourhoods differ exactly by the swap."""
    def orient(edge: Tuple[int, int]) -> Tuple[int, int]:
        x, y = edge
        return (x, y) if g.part[x] == U else (y, x)

    u, w = orient(e)
    u2, w2 = orient(f)
    if {u, w} & {u2, w2}:
        return False
    nu = {x for x in g.graph.neighbors(u) if g.part[x] == W}
    nu2 = {x for x in g.graph.neighbors(u2) if g.part[x] == W}
    nw = {x for x in g.graph.neighbors(w) if g.part[x] == U}
    nw2 = {x for x in g.graph.neighbors(w2) if g.part[x] == U}
    return (nu ^ nu2) == {w, w2} and (nw ^ nw2) == {u, u2}


def twin_edge_classes(g: BipartiteGraph) -> List[List[Tuple[int, int]]]:
    """Partition the cross edges into classes of mutually twin edges."""
    edges = g.cross_edges()
    uf = _UnionFind(len(edges))
    for i, j in combinations(range(len(edges)), 2):
        if are_twin_edges(g, edges[i], edges[j]):
            uf.union(i, j)
    groups: Dict[int, List[Tuple[int, int]]] = {}
    for i, e in enumerate(edges):
        groups.setdefault(uf.find(i), []).append(e)
    return [groups[r] for r in sorted(groups)]


def basic_quotient(g: BipartiteGraph) -> Tuple[BipartiteGraph, List[int]]:
    """Repeatedly delete both ends of a non-representative twin edge until none remain."""
    cur, keep = g, list(range(g.n))
    while True:
        extra = next((cls[1] for cls in twin_edge_classes(cur) if len(cls) > 1), None)
        if extra is None:
            return cur, keep
        rest = [v for v in range(cur.n) if v not in extra]
        sub, idx = induced_subgraph(cur.graph, rest)
        cur = BipartiteGraph(sub, tuple(cur.part[v] for v in idx), cur.co)
        keep = [keep[v] for v in idx]


# ---------------------------------------------------------------------------
# Random members
# ---------------------------------------------------------------------------


class _Builder:
    def __init__(self, budget: int) -> None:
        self.n = 0
        self.budget = budget
        self.edges: List[Tuple[int, int]] = []

    def room(self, cost: int) -> bool:
        return self.n + cost <= self.budget

    def new(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))


def _random_strip(b: _Builder, rng: random.Random, n_units: int, first: Optional[int]) -> HexStrip:
    """Strip of at most ``n_units`` units (fewer when the budget runs out);
    ``first`` (if given) becomes a left-edge vertex.  A unit with ``k`` paths
    costs ``2k`` new vertices, plus the left edge for the first unit."""
    units: List[HexUnit] = []
    for i in range(n_units):
        extra = (2 if first is None else 1) if i == 0 else 0
        if not b.room(extra + 4):
            if i == 0:
                raise ValueError("no room for a strip")
            break
        k = 2
        while k < 6 and b.room(extra + 2 * (k + 1)) and rng.random() < (0.5 if k == 2 else 0.4):
            k += 1
        if i == 0:
            a, a1 = b.new() if first is None else first, b.new()
            if first is not None and rng.random() < 0.5:
                a, a1 = a1, a
            b.edge(a, a1)
        elif rng.random() < 0.5:  # d = 1
            a, a1 = units[-1].paths[1][1], units[-1].b
        else:
            a, a1 = units[-1].b, units[-1].paths[1][1]
        hub = b.new()
        paths = []
        for j in range(k):
            x = a1 if j == 0 else b.new()
            y = b.new()
            if j:
                b.edge(a, x)
            b.edge(x, y)
            b.edge(y, hub)
            paths.append((x, y))
        units.append(HexUnit(a, hub, paths))
    return HexStrip(units)


def generate_random_member(seed: int, size: int) -> Graph:
    """Random graph of the class with at most ``size`` vertices.

    Built as chains of strips and lobster spines with gluing vertices, corner
    pendants, legs with feet, parallel copies (r-paths and footed legs, up to
    four) and pendant twins, then randomly relabelled.
    """
    if size < 1:
        raise ValueError("size target must be at least 1")
    rng = random.Random(seed)
    b = _Builder(size)

    def pendants(v: int, p: float) -> None:
        if b.room(1) and rng.random() < p:
            for _ in range(rng.choice((1, 1, 2))):
                if b.room(1):
                    b.edge(v, b.new())

    def legs_at(v: int) -> None:
        pendants(v, 0.3)
        if b.room(2) and rng.random() < 0.4:
            for _ in range(rng.choice((1, 1, 2, 3, 4))):
                if not b.room(2):
                    break
                leg = b.new()
                b.edge(v, leg)
                for _ in range(rng.choice((1, 1, 2))):
                    if b.room(1):
                        b.edge(leg, b.new())

    def spine_from(v: int, length: int) -> int:
        cur = v
        for _ in range(length):
            if not b.room(1):
                break
            nxt = b.new()
            b.edge(cur, nxt)
            legs_at(nxt)
            cur = nxt
        return cur

    while b.n < size:
        if not b.room(6) or rng.random() < 0.25:
            start = b.new()
            legs_at(start)
            spine_from(start, rng.randint(0, 5))
            continue
        port: Optional[int] = None
        if rng.random() < 0.5:
            port = b.new()
            legs_at(port)
            spine_end = spine_from(port, rng.randint(0, 3))
            port = spine_end
        for si in range(rng.choice((1, 1, 2, 3))):
            n_units = rng.randint(1, 3)
            if not b.room(6 if port is None else 5):
                break
            strip = _random_strip(b, rng, n_units, port)
            if port is not None:
                legs_at(port)
            right = rng.choice(strip.right_edge)
            for c in strip.corners():
                if c not in (port, right):
                    pendants(c, 0.3)
            port = spine_from(right, rng.choice((0, 0, 1, 2, 3)))
            legs_at(right)
    perm = list(range(b.n))
    rng.shuffle(perm)
    return from_edge_list(b.n, [(perm[u], perm[v]) for u, v in b.edges])
