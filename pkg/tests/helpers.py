"""Shared graph builders for the test-suite."""

from __future__ import annotations

from typing import List, Tuple

from udgkit.graph import BipartiteGraph, Graph, complement, cycle_graph, from_edge_list, star_op, two_coloring


def hexagon_chain_with_tail() -> Tuple[Graph, dict]:
    """Four hexagons (edge-shared pairs joined at one vertex) plus a
    three-step lobster tail where every spine vertex has a leg and a foot."""
    edges: List[Tuple[int, int]] = []
    names: dict = {}
    counter = iter(range(1000))

    def v(name: str) -> int:
        names[name] = next(counter)
        return names[name]

    def cyc(*vs: int) -> None:
        for i in range(len(vs)):
            e = (vs[i], vs[(i + 1) % len(vs)])
            if e not in edges and e[::-1] not in edges:
                edges.append(e)

    a0, x0, y0, h0, y1, x1 = (v(s) for s in ("a0", "x0", "y0", "h0", "y1", "x1"))
    cyc(a0, x0, y0, h0, y1, x1)
    y2, h2, y3, x3 = (v(s) for s in ("y2", "h2", "y3", "x3"))
    cyc(y1, h0, y2, h2, y3, x3)
    x4, y4, h4, y5, x5 = (v(s) for s in ("x4", "y4", "h4", "y5", "x5"))
    cyc(h2, x4, y4, h4, y5, x5)
    y6, h6, y7, x7 = (v(s) for s in ("y6", "h6", "y7", "x7"))
    cyc(y5, h4, y6, h6, y7, x7)
    prev = h6
    for i in range(1, 4):
        s, leg, foot = v(f"s{i}"), v(f"l{i}"), v(f"f{i}")
        edges += [(prev, s), (s, leg), (leg, foot)]
        prev = s
    return from_edge_list(len(names), edges), names


def starred_cycle(n: int) -> Graph:
    c = cycle_graph(n)
    return star_op(BipartiteGraph(c, two_coloring(c))).graph


def co_bipartite_complement_graph(g: Graph) -> Graph:
    return complement(g)


# acceptance bookkeeping: criterion number -> (passed, detail)
ACCEPTANCE_RESULTS: dict = {}


class criterion:
    """Context manager recording the outcome of one acceptance criterion."""

    def __init__(self, number: int, title: str) -> None:
        self.number = number
        self.title = title
        self.detail = ""

    def __enter__(self) -> "criterion":
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        ok = exc_type is None
        detail = self.detail if ok else f"{exc_type.__name__}: {exc}"
        ACCEPTANCE_RESULTS[self.number] = (ok, f"{self.title} -- {detail}")
        print(format_result(self.number))
        return False


def format_result(number: int) -> str:
    ok, detail = ACCEPTANCE_RESULTS[number]
    return f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
