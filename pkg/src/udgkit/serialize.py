"""JSON documents for embeddings.

Layout::

    {"graph6": "...", "params": {...}, "points": [["x", "y"], ...],
     "part": "UUWW..." | null, "kind": "...", "precision": null | int}

Coordinates are decimal strings: 17 significant digits for doubles (exact
round trip) and ``precision + 3`` digits for multiprecision values.
"""

from __future__ import annotations

import json
from typing import Any, Dict

from .embedder import Embedding, EmbeddingParams
from .formats import FormatError, from_graph6, to_graph6
from .graph import U, W
from .numeric import FloatBackend, format_number, mp_backend


def embedding_to_dict(emb: Embedding) -> Dict[str, Any]:
    return {
        "graph6": to_graph6(emb.target),
        "params": emb.params.to_dict(),
        "points": [[format_number(x), format_number(y)] for x, y in emb.points],
        "part": None if emb.part is None else "".join(emb.part),
        "kind": emb.kind,
        "precision": emb.precision,
    }


def embedding_to_json(emb: Embedding, indent: Any = None) -> str:
    return json.dumps(embedding_to_dict(emb), indent=indent)


def embedding_from_dict(data: Dict[str, Any]) -> Embedding:
    for key in ("graph6", "points"):
        if key not in data:
            raise FormatError(f"embedding document lacks {key!r}")
    g = from_graph6(data["graph6"])
    precision = data.get("precision")
    num = mp_backend(int(precision)) if precision else FloatBackend()
    try:
        pts = [(num.num(x), num.num(y)) for x, y in data["points"]]
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad point record: {exc}") from exc
    part = data.get("part")
    if part is not None:
        if len(part) != g.n or set(part) - {U, W}:
            raise FormatError("part must be a U/W string with one letter per vertex")
        part = tuple(part)
    if len(pts) != g.n:
        raise FormatError(f"{len(pts)} points for a {g.n}-vertex graph")
    params = EmbeddingParams.from_dict(data.get("params") or {}, num)
    return Embedding(pts, g, params, part, data.get("kind", ""), int(precision) if precision else None)


def embedding_from_json(text: str) -> Embedding:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, byte {exc.pos}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise FormatError("embedding document must be a JSON object")
    return embedding_from_dict(data)
