"""Known non-unit-disk graphs, the infinite forbidden families, and the
edge-asteroid-triple detector."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .graph import (
    BipartiteGraph,
    Graph,
    GraphError,
    as_bipartite,
    bipartite_complement,
    complement,
    complete_bipartite,
    complete_graph,
    contains_induced,
    cycle_graph,
    disjoint_union,
    from_edge_list,
    star_op,
    two_coloring,
)

FAMILIES = {
    # family id -> smallest admissible k
    "co-even-cycle": 4,
    "co-K2-odd-cycle": 1,
    "star-even-cycle": 4,
}


@dataclass(frozen=True)
class CatalogEntry:
    """A named graph.

    ``kind`` is ``"non-udg"`` for graphs that are themselves obstructions and
    ``"seed"`` for bipartite graphs whose complement and star are obstructions.
    """

    name: str
    graph: Graph
    family: Optional[Tuple[str, int]] = None
    source: str = ""
    kind: str = "non-udg"
    aliases: Tuple[str, ...] = ()


def _one_based(n: int, pairs: str) -> Graph:
    edges = []
    for token in pairs.split():
        a, b = token.split("-")
        edges.append((int(a) - 1, int(b) - 1))
    return from_edge_list(n, edges)


_HEX = "1-2 2-3 3-4 4-5 5-6 6-1"
_G12_BASE = "1-2 1-3 2-4 2-5 3-6 3-7 4-6 5-7"


def builtin_catalog() -> List[CatalogEntry]:
    """Fixed small obstructions plus the bipartite seed graphs."""
    fig = "hand-transcribed"
    return [
        CatalogEntry("K1,6", complete_bipartite(1, 6), source="known minimal non-UDG"),
        CatalogEntry("K2,3", complete_bipartite(2, 3), source="known minimal non-UDG"),
        CatalogEntry("G1", _one_based(7, _G12_BASE + " 4-5"), source=fig),
        CatalogEntry("G2", _one_based(7, _G12_BASE + " 5-6"), source=fig),
        CatalogEntry("G3", _one_based(6, "1-4 1-5 2-4 2-5 3-6 3-5 4-6"), source=fig),
        CatalogEntry("G4", _one_based(7, "1-4 1-5 2-4 2-5 3-6 3-7 4-6 5-7"), source=fig),
        CatalogEntry("G5", _one_based(7, "1-2 2-3 4-5 5-6 1-4 2-5 3-6 4-7 6-7"), source=fig),
        CatalogEntry(
            "S3,3,3",
            _one_based(10, "1-2 1-3 1-4 2-5 3-6 4-7 5-8 6-9 7-10"),
            source="spider with three legs of length 3",
            kind="seed",
        ),
        CatalogEntry(
            "F1",
            _one_based(9, "1-2 2-3 3-4 4-5 5-6 6-3 3-7 7-1 7-8 8-6 8-9"),
            source=fig,
            kind="seed",
        ),
        CatalogEntry(
            "F2", _one_based(9, _HEX + " 2-7 4-8 6-9"), source="C6 + 3 non-consecutive pendants",
            kind="seed", aliases=("C6+3nc",),
        ),
        CatalogEntry(
            "F3", _one_based(10, _HEX + " 2-7 7-8 3-9 9-10"),
            source="C6 + 2 consecutive pendant paths of length 2", kind="seed",
            aliases=("C6+2l2",),
        ),
        CatalogEntry(
            "F4", _one_based(9, _HEX + " 2-7 3-9 4-8"), source="C6 + 3 consecutive pendants",
            kind="seed", aliases=("C6+3c",),
        ),
    ]


def catalog_entry(name: str) -> CatalogEntry:
    for entry in builtin_catalog():
        if name == entry.name or name in entry.aliases:
            return entry
    raise KeyError(name)


def derived_obstructions() -> List[CatalogEntry]:
    """Full complement and star of every seed (both are non-UDGs)."""
    out = []
    for seed in builtin_catalog():
        if seed.kind != "seed":
            continue
        bip = as_bipartite(seed.graph)
        out.append(CatalogEntry(
            f"co-{seed.name}", complement(seed.graph),
            source=f"complement of {seed.name}",
        ))
        out.append(CatalogEntry(
            f"{seed.name}*", star_op(bip).graph,
            source=f"star of {seed.name}",
        ))
    return out


def generate_family(family: str, k: int) -> Graph:
    """Instantiate one member of an infinite forbidden family."""
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}")
    lo = FAMILIES[family]
    if k < lo:
        raise GraphError(f"family {family} needs k >= {lo}, got {k}")
    if family == "co-even-cycle":
        return complement(cycle_graph(2 * k))
    if family == "co-K2-odd-cycle":
        return complement(disjoint_union(complete_graph(2), cycle_graph(2 * k + 1)))
    return star_op(as_bipartite(cycle_graph(2 * k))).graph


def family_size(family: str, k: int) -> int:
    return 2 * k + 3 if family == "co-K2-odd-cycle" else 2 * k


# ---------------------------------------------------------------------------
# Edge-asteroid triples
# ---------------------------------------------------------------------------

Edge = Tuple[int, int]


@dataclass(frozen=True)
class EATWitness:
    """Three edges and, for each ``i``, a vertex path whose terminal edges are
    the other two edges and which avoids ``N[u_i] | N[w_i]``."""

    edges: Tuple[Edge, Edge, Edge]
    paths: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "paths": [list(p) for p in self.paths]}


def _closed_nbhd(g: Graph, e: Edge) -> set:
    u, w = e
    return set(g.neighbors(u)) | set(g.neighbors(w)) | {u, w}


def _component_labels(g: Graph, blocked: set) -> Dict[int, int]:
    label: Dict[int, int] = {}
    for s in range(g.n):
        if s in blocked or s in label:
            continue
        label[s] = s
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if u not in blocked and u not in label:
                    label[u] = s
                    queue.append(u)
    return label


def _connecting_path(g: Graph, ej: Edge, ek: Edge, blocked: set) -> Optional[Tuple[int, ...]]:
    """Simple path with first edge ``ej`` and last edge ``ek`` avoiding ``blocked``."""
    starts, goals = set(ej), set(ek)
    parent: Dict[int, int] = {v: -1 for v in starts}
    queue = deque(sorted(starts))
    hit = None
    while queue:
        v = queue.popleft()
        if v in goals:
            hit = v
            break
        for u in g.adjacency[v]:
            if u not in parent and u not in blocked:
                parent[u] = v
                queue.append(u)
    if hit is None:
        return None
    core = [hit]
    while parent[core[-1]] != -1:
        core.append(parent[core[-1]])
    core.reverse()  # core[0] in ej, core[-1] in ek
    head = ej[1] if core[0] == ej[0] else ej[0]
    tail = ek[1] if core[-1] == ek[0] else ek[0]
    path = [head] + core + [tail]
    if len(set(path)) != len(path):
        return None
    return tuple(path)


def replay_eat(g: Graph, witness: EATWitness) -> bool:
    """Independently re-check every claim a witness makes."""
    edges = witness.edges
    if len({frozenset(e) for e in edges}) != 3:
        return False
    for e in edges:
        if not g.has_edge(*e):
            return False
    for i in range(3):
        path = witness.paths[i]
        j, k = [x for x in range(3) if x != i]
        if len(path) < 2 or len(set(path)) != len(path):
            return False
        if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
            return False
        first, last = {path[0], path[1]}, {path[-2], path[-1]}
        ends = {frozenset(first), frozenset(last)}
        if ends != {frozenset(edges[j]), frozenset(edges[k])}:
            return False
        if _closed_nbhd(g, edges[i]) & set(path):
            return False
    return True


def iter_edge_asteroid_triples(g: Graph) -> Iterator[EATWitness]:
    """All edge-asteroid triples in lexicographic edge order."""
    edges = g.edges()
    blocked = [_closed_nbhd(g, e) for e in edges]
    labels = [_component_labels(g, b) for b in blocked]

    def comp(i: int, j: int) -> Optional[int]:
        u, w = edges[j]
        lu, lw = labels[i].get(u), labels[i].get(w)
        return lu if lu is not None and lu == lw else None

    m = len(edges)
    for a in range(m):
        for b in range(a + 1, m):
            ca, cb = comp(b, a), comp(a, b)
            for c in range(b + 1, m):
                if ca is None or ca != comp(b, c):
                    continue
                if cb is None or cb != comp(a, c):
                    continue
                cc = comp(c, a)
                if cc is None or cc != comp(c, b):
                    continue
                trio = (edges[a], edges[b], edges[c])
                idx = (a, b, c)
                paths = []
                for i in range(3):
                    j, k = [x for x in range(3) if x != i]
                    p = _connecting_path(g, trio[j], trio[k], blocked[idx[i]])
                    if p is None:
                        break
                    paths.append(p)
                if len(paths) < 3:
                    continue
                witness = EATWitness(trio, tuple(paths))  # type: ignore[arg-type]
                if not replay_eat(g, witness):
                    raise AssertionError(f"edge-asteroid witness failed replay: {witness}")
                yield witness


def has_edge_asteroid_triple(g: BipartiteGraph | Graph) -> Optional[EATWitness]:
    """First edge-asteroid triple of a bipartite graph, replay-verified, or None."""
    graph = g.graph if isinstance(g, BipartiteGraph) else g
    for witness in iter_edge_asteroid_triples(graph):
        return witness
    return None


# ---------------------------------------------------------------------------
# Detection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Match:
    name: str
    mapping: Dict[int, int]


@dataclass
class DetectionReport:
    matches: List[Match] = field(default_factory=list)
    eat_witness: Optional[EATWitness] = None
    eat_source: Optional[str] = None  # "complement" or "star"
    partition: Optional[Tuple[str, ...]] = None

    @property
    def forbidden(self) -> bool:
        return bool(self.matches) or self.eat_witness is not None

    def to_dict(self) -> dict:
        return {
            "forbidden": self.forbidden,
            "matches": [
                {"name": m.name, "mapping": {str(k): v for k, v in sorted(m.mapping.items())}}
                for m in self.matches
            ],
            "eat": None if self.eat_witness is None else {
                "source": self.eat_source, **self.eat_witness.to_dict(),
            },
            "partition": None if self.partition is None else "".join(self.partition),
        }


def obstruction_patterns(max_n: int, max_family_k: Optional[int] = None) -> List[Tuple[str, Graph]]:
    """Every fixed obstruction and family instance with at most ``max_n`` vertices."""
    pats: List[Tuple[str, Graph]] = []
    for entry in builtin_catalog() + derived_obstructions():
        if entry.kind == "non-udg" and entry.graph.n <= max_n:
            pats.append((entry.name, entry.graph))
    for family, lo in FAMILIES.items():
        k = lo
        while family_size(family, k) <= max_n and (max_family_k is None or k <= max_family_k):
            pats.append((f"{family}[{k}]", generate_family(family, k)))
            k += 1
    return pats


def detect_forbidden(
    g: Graph,
    max_family_k: Optional[int] = None,
    partition: Optional[Sequence[str]] = None,
    first_only: bool = False,
) -> DetectionReport:
    """Scan ``g`` for known obstructions.

    When ``g`` is co-bipartite (under ``partition`` or, if omitted, the
    partition found by 2-colouring its complement) the bipartite complement
    and the star of ``g`` are also searched for edge-asteroid triples.
    """
    report = DetectionReport()
    for name, pattern in obstruction_patterns(g.n, max_family_k):
        mapping = contains_induced(g, pattern)
        if mapping is not None:
            report.matches.append(Match(name, mapping))
            if first_only:
                return report
    part = tuple(partition) if partition is not None else two_coloring(complement(g))
    if part is not None:
        try:
            co = BipartiteGraph(g, part, co=True)
        except GraphError:
            co = None
        if co is not None:
            report.partition = part
            for source, bip in (("complement", star_op(bipartite_complement(co))),
                                ("star", star_op(co))):
                witness = has_edge_asteroid_triple(bip)
                if witness is not None:
                    report.eat_witness, report.eat_source = witness, source
                    break
    return report
