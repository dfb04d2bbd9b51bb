"""Graph representation and the combinatorial primitives used everywhere else.

Graphs are immutable: vertex ids are dense integers ``0..n-1`` and every
transformation returns a new value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

U = "U"
W = "W"


class GraphError(ValueError):
    """Raised on malformed graph input (bad endpoints, self-loops, bad parts)."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with sorted neighbour tuples."""

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    _sets: Tuple[frozenset, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adjacency) != self.n:
            raise GraphError("adjacency length must equal n")
        sets = []
        for v, nbrs in enumerate(self.adjacency):
            s = frozenset(nbrs)
            if v in s:
                raise GraphError(f"self-loop at vertex {v}")
            if len(s) != len(nbrs) or list(nbrs) != sorted(nbrs):
                raise GraphError(f"neighbours of {v} must be sorted and distinct")
            for u in s:
                if not 0 <= u < self.n:
                    raise GraphError(f"vertex {u} out of range")
            sets.append(s)
        for v, s in enumerate(sets):
            for u in s:
                if v not in sets[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "_sets", tuple(sets))

    # -- queries -------------------------------------------------------
    def neighbors(self, v: int) -> frozenset:
        return self._sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on ``n`` vertices; duplicate pairs are merged."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    nbrs: List[set] = [set() for _ in range(n)]
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge ({u}, {v}) is a self-loop")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def empty_graph(n: int) -> Graph:
    return from_edge_list(n, [])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(p: int, q: int) -> Graph:
    return from_edge_list(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return from_edge_list(offset, edges)


def complement(g: Graph) -> Graph:
    """Edge ``uv`` present iff absent in ``g``."""
    return Graph(
        g.n,
        tuple(
            tuple(u for u in range(g.n) if u != v and u not in g.neighbors(v))
            for v in range(g.n)
        ),
    )


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, List[int]]:
    """Induced subgraph on ``vertices``; returns it plus new-id -> old-id list."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u in keep for v in g.adjacency[u] if v in index and u < v]
    return from_edge_list(len(keep), edges), keep


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])[0]


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Return the graph with vertex ``v`` renamed ``perm[v]``."""
    return from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def connected_components(g: Graph) -> List[List[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def bfs_distances(g: Graph, sources: Iterable[int], blocked: Iterable[int] = ()) -> Dict[int, int]:
    blocked = set(blocked)
    dist: Dict[int, int] = {}
    queue = deque()
    for s in sources:
        if s not in blocked and s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if u not in dist and u not in blocked:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def shortest_odd_cycle(g: Graph) -> Optional[List[int]]:
    """Shortest odd cycle (always chordless) or None when ``g`` is bipartite."""
    best: Optional[List[int]] = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif dist[u] == dist[v] and (best is None or 2 * dist[v] + 1 < len(best)):
                    left, right = [v], [u]
                    while left[-1] != right[-1]:
                        left.append(parent[left[-1]])
                        right.append(parent[right[-1]])
                    cycle = left + right[-2::-1]
                    if len(cycle) % 2 == 1 and len(set(cycle)) == len(cycle):
                        if best is None or len(cycle) < len(best):
                            best = cycle
    return best


def two_coloring(g: Graph) -> Optional[Tuple[str, ...]]:
    """Proper 2-colouring (smallest vertex of each component gets U) or None."""
    part: List[Optional[str]] = [None] * g.n
    for s in range(g.n):
        if part[s] is not None:
            continue
        part[s] = U
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if part[u] is None:
                    part[u] = W if part[v] == U else U
                    queue.append(u)
                elif part[u] == part[v]:
                    return None
    return tuple(part)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Bipartite / co-bipartite records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    """A graph with a fixed two-part labelling.

    ``co=False``: no edges inside a part.  ``co=True``: each part is a clique.
    """

    graph: Graph
    part: Tuple[str, ...]
    co: bool = False

    def __post_init__(self) -> None:
        if len(self.part) != self.graph.n:
            raise GraphError("one part label per vertex is required")
        for p in self.part:
            if p not in (U, W):
                raise GraphError(f"part label {p!r} is not U or W")
        for u, v in self.graph.edges():
            same = self.part[u] == self.part[v]
            if same and not self.co:
                raise GraphError(f"edge ({u}, {v}) lies inside part {self.part[u]}")
        if self.co:
            for side in (U, W):
                members = self.members(side)
                for i, u in enumerate(members):
                    for v in members[i + 1:]:
                        if not self.graph.has_edge(u, v):
                            raise GraphError(f"part {side} is not a clique ({u}, {v} missing)")

    @property
    def n(self) -> int:
        return self.graph.n

    def members(self, side: str) -> List[int]:
        return [v for v in range(self.graph.n) if self.part[v] == side]

    def cross_edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, v in self.graph.edges() if self.part[u] != self.part[v]]


def as_bipartite(g: Graph, part: Optional[Sequence[str]] = None) -> BipartiteGraph:
    """Attach a bipartition (computed when not given); raises if none exists."""
    if part is None:
        coloring = two_coloring(g)
        if coloring is None:
            raise GraphError("graph is not bipartite")
        part = coloring
    return BipartiteGraph(g, tuple(part), co=False)


def bipartite_complement(g: BipartiteGraph) -> BipartiteGraph:
    """Complement the U x W cross edges; intra-part edges are unchanged."""
    edges = []
    n = g.n
    for u in range(n):
        for v in range(u + 1, n):
            has = g.graph.has_edge(u, v)
            if g.part[u] == g.part[v]:
                if has:
                    edges.append((u, v))
            elif not has:
                edges.append((u, v))
    return BipartiteGraph(from_edge_list(n, edges), g.part, g.co)


def star_op(g: BipartiteGraph) -> BipartiteGraph:
    """Complement each part internally; cross edges are kept."""
    edges = []
    n = g.n
    for u in range(n):
        for v in range(u + 1, n):
            has = g.graph.has_edge(u, v)
            if g.part[u] == g.part[v]:
                if not has:
                    edges.append((u, v))
            elif has:
                edges.append((u, v))
    return BipartiteGraph(from_edge_list(n, edges), g.part, not g.co)


# ---------------------------------------------------------------------------
# Induced subgraph search
# ---------------------------------------------------------------------------


def _search_order(pattern: Graph) -> List[int]:
    """Descending degree, then greedily most-constrained (most placed neighbours)."""
    order: List[int] = []
    placed = set()
    remaining = set(range(pattern.n))
    while remaining:
        best = max(
            remaining,
            key=lambda v: (len(pattern.neighbors(v) & placed), pattern.degree(v), -v),
        )
        order.append(best)
        placed.add(best)
        remaining.discard(best)
    return order


def iter_induced(host: Graph, pattern: Graph) -> Iterator[Dict[int, int]]:
    """Yield every injective map realising ``pattern`` as an induced subgraph."""
    if pattern.n > host.n:
        return
    order = _search_order(pattern)
    mapping: Dict[int, int] = {}
    used: set = set()

    def extend(i: int) -> Iterator[Dict[int, int]]:
        if i == len(order):
            yield dict(mapping)
            return
        p = order[i]
        pdeg = pattern.degree(p)
        nbrs = [mapping[q] for q in pattern.neighbors(p) if q in mapping]
        non = [mapping[q] for q in mapping if q not in pattern.neighbors(p)]
        if nbrs:
            cands = set(host.neighbors(nbrs[0]))
            for h in nbrs[1:]:
                cands &= host.neighbors(h)
        else:
            cands = set(range(host.n))
        cands -= used
        for h in non:
            cands -= host.neighbors(h)
        for c in sorted(cands):
            if host.degree(c) < pdeg:
                continue
            mapping[p] = c
            used.add(c)
            yield from extend(i + 1)
            del mapping[p]
            used.discard(c)

    yield from extend(0)


def contains_induced(host: Graph, pattern: Graph) -> Optional[Dict[int, int]]:
    """First induced embedding of ``pattern`` into ``host`` (pattern -> host), or None."""
    for mapping in iter_induced(host, pattern):
        return mapping
    return None


def is_induced_mapping(host: Graph, pattern: Graph, mapping: Dict[int, int]) -> bool:
    """Re-check a claimed induced embedding (adjacency and non-adjacency)."""
    if sorted(mapping) != list(range(pattern.n)):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images) or any(not 0 <= h < host.n for h in images):
        return False
    for p in range(pattern.n):
        for q in range(p + 1, pattern.n):
            if pattern.has_edge(p, q) != host.has_edge(mapping[p], mapping[q]):
                return False
    return True


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in g) != sorted(h.degree(v) for v in h):
        return False
    return contains_induced(g, h) is not None


# ---------------------------------------------------------------------------
# Cycles and blocks
# ---------------------------------------------------------------------------


def iter_chordless_cycles(g: Graph, maxlen: int) -> Iterator[Tuple[int, ...]]:
    """Chordless cycles of length <= maxlen, each once.

    A cycle is reported starting at its smallest vertex, oriented so that the
    second vertex is smaller than the last one.
    """
    if maxlen < 3:
        raise GraphError("maxlen must be at least 3")
    maxlen = min(maxlen, max(3, 2 * g.n))
    for s in range(g.n):
        higher = [v for v in g.adjacency[s] if v > s]
        for v1 in higher:
            path = [s, v1]
            on_path = {s, v1}
            stack = [(v1, iter(sorted(g.adjacency[v1])))]
            while stack:
                tip, it = stack[-1]
                advanced = False
                for w in it:
                    if w <= s or w in on_path:
                        continue
                    # w must see no inner path vertex except the tip
                    if any(g.has_edge(w, x) for x in path[1:-1]):
                        continue
                    if g.has_edge(w, s):
                        if len(path) >= 2 and v1 < w:
                            yield tuple(path + [w])
                        continue
                    if len(path) + 1 >= maxlen:
                        continue
                    path.append(w)
                    on_path.add(w)
                    stack.append((w, iter(sorted(g.adjacency[w]))))
                    advanced = True
                    break
                if not advanced:
                    stack.pop()
                    on_path.discard(path.pop())
            # path holds only s once the stack empties


def chordless_cycles_up_to(g: Graph, maxlen: int) -> List[Tuple[int, ...]]:
    return list(iter_chordless_cycles(g, maxlen))


def two_connected_components(g: Graph) -> List[frozenset]:
    """Biconnected components (bridges appear as 2-vertex components)."""
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    comps: List[frozenset] = []
    edge_stack: List[Tuple[int, int]] = []
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            v, parent, it = stack[-1]
            pushed = False
            for u in it:
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    edge_stack.append((v, u))
                    stack.append((u, v, iter(g.adjacency[u])))
                    pushed = True
                    break
                if u != parent and disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    low[v] = min(low[v], disc[u])
            if pushed:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    comp = set()
                    while True:
                        a, b = edge_stack.pop()
                        comp.update((a, b))
                        if (a, b) == (parent, v):
                            break
                    comps.append(frozenset(comp))
    return comps


# ---------------------------------------------------------------------------
# Pendant twins
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PendantExpansion:
    """Record of a pendant-twin reduction.

    ``kept[i]`` is the original id of reduced vertex ``i``; ``collapsed`` maps
    every removed original vertex to the kept pendant it duplicates.
    """

    n_original: int
    kept: Tuple[int, ...]
    collapsed: Dict[int, int]

    def representative(self, v: int) -> int:
        """Original id whose point ``v`` shares after re-expansion."""
        return self.collapsed.get(v, v)

    def expand_points(self, points: Sequence) -> List:
        """Map reduced-graph points back to all original vertices (co-located)."""
        position = {orig: points[i] for i, orig in enumerate(self.kept)}
        return [position[self.representative(v)] for v in range(self.n_original)]


def pendant_twin_reduce(g: BipartiteGraph) -> Tuple[BipartiteGraph, PendantExpansion]:
    """Collapse pendant vertices sharing a neighbour to one representative."""
    graph = g.graph
    collapsed: Dict[int, int] = {}
    for v in range(graph.n):
        leaves = sorted(u for u in graph.adjacency[v] if graph.degree(u) == 1)
        if graph.degree(v) == 1 and len(leaves) == 1:
            # an isolated edge: both ends are pendants of each other, keep both
            continue
        for extra in leaves[1:]:
            collapsed[extra] = leaves[0]
    kept = tuple(v for v in range(graph.n) if v not in collapsed)
    sub, _ = induced_subgraph(graph, kept)
    reduced = BipartiteGraph(sub, tuple(g.part[v] for v in kept), g.co)
    return reduced, PendantExpansion(graph.n, kept, collapsed)
