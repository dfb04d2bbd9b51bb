"""graph6 and plain edge-list serialisation."""

from __future__ import annotations

from typing import Iterable, Iterator, List, Tuple

from .graph import Graph, GraphError, from_edge_list

GRAPH6_HEADER = ">>graph6<<"


class FormatError(ValueError):
    """Malformed serialised input; the message names the offending line/byte."""


def _size_bytes(n: int) -> List[int]:
    if n < 63:
        return [n]
    # values are offset by 63 on output, so 63 encodes the '~' marker
    if n < 258048:
        return [63] + [(n >> s) & 63 for s in (12, 6, 0)]
    if n < 68719476736:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise GraphError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g`` as a graph6 string (no trailing newline)."""
    data = _size_bytes(g.n)
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        data.append(value)
    text = "".join(chr(63 + d) for d in data)
    return GRAPH6_HEADER + text if header else text


def from_graph6(text: str, line: int = 1) -> Graph:
    """Decode one graph6 line; ``line`` is used only in error messages."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise FormatError(f"line {line}: empty graph6 record")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"line {line}, byte {pos}: character {ch!r} outside graph6 range")
    vals = [ord(c) - 63 for c in s]
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        rest = vals[8:]
    else:
        raise FormatError(f"line {line}: truncated graph6 size field")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(rest) != need:
        raise FormatError(
            f"line {line}: expected {need} edge bytes for n={n}, found {len(rest)}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, bit = divmod(k, 6)
            if (rest[byte] >> (5 - bit)) & 1:
                edges.append((i, j))
            k += 1
    return from_edge_list(n, edges)


def iter_graph6(lines: Iterable[str]) -> Iterator[Graph]:
    for number, raw in enumerate(lines, start=1):
        if raw.strip():
            yield from_graph6(raw, line=number)


def to_edge_list(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(rows) + "\n"


def from_edge_list_text(text: str) -> Graph:
    """Parse the ``n m`` header followed by ``u v`` lines (0-based)."""
    rows: List[Tuple[int, str]] = [
        (i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), start=1)
    ]
    rows = [(i, ln) for i, ln in rows if ln]
    if not rows:
        raise FormatError("line 1: missing 'n m' header")
    head_line, head = rows[0]
    parts = head.split()
    if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise FormatError(f"line {head_line}: header must be 'n m', got {head!r}")
    n, m = int(parts[0]), int(parts[1])
    edges = []
    for i, ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise FormatError(f"line {i}: expected 'u v', got {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if len(edges) != m:
        raise FormatError(f"line {head_line}: header promises {m} edges, found {len(edges)}")
    try:
        return from_edge_list(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc
