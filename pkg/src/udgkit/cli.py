"""Command-line entry point.

Graphs travel as graph6 lines (or an edge list with ``--format edgelist``);
embeddings and reports travel as one compact JSON document per line.  Data
goes to stdout, diagnostics to stderr.

Exit status: 0 ok, 1 negative result (obstruction found, verification
failed, search inconclusive), 2 usage or input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Iterable, List, Optional, Sequence

from .catalog import FAMILIES, builtin_catalog, derived_obstructions, detect_forbidden, generate_family
from .embedder import (
    ForbiddenInputError,
    ParameterError,
    TauPreconditionError,
    embed_class_x_complement,
    embed_class_x_star,
    embed_lobster_star,
    lobster_from_graph,
    tau_transform,
)
from .formats import FormatError, from_edge_list_text, iter_graph6, to_graph6
from .graph import Graph, GraphError
from .numeric import DEFAULT_DPS, FloatBackend, mp_backend
from .search import SearchConfig, certify_udg, minimality_check
from .serialize import embedding_from_dict, embedding_to_dict
from .structure import RecognitionInternalError, generate_random_member, recognize_class_x
from .svg import embedding_svg
from .verifier import check_strip_conditions, verify_embedding

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _read_graphs(path: str, fmt: str) -> List[Graph]:
    text = _read_text(path)
    if fmt == "edgelist":
        return [from_edge_list_text(text)]
    graphs = list(iter_graph6(text.splitlines()))
    if not graphs:
        raise FormatError("line 1: no graph6 records on input")
    return graphs


def _read_documents(path: str) -> List[dict]:
    text = _read_text(path)
    try:
        doc = json.loads(text)
        docs = doc if isinstance(doc, list) else [doc]
    except json.JSONDecodeError:
        docs = []
        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                docs.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise FormatError(f"line {number}, byte {exc.pos}: {exc.msg}") from exc
    if not docs:
        raise FormatError("line 1: no JSON documents on input")
    return docs


class _Out:
    def __init__(self, path: Optional[str]) -> None:
        self.fh = sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8")

    def line(self, text: str) -> None:
        self.fh.write(text + "\n")

    def doc(self, data: Any) -> None:
        self.line(json.dumps(data))

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()
        else:
            self.fh.flush()


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def _backend(args: argparse.Namespace):
    if getattr(args, "float", False):
        return FloatBackend()
    if args.precision < 20:
        raise UsageError("--precision must be at least 20")
    return mp_backend(args.precision)


def _positive(name: str, value: Optional[str], upper: Optional[float] = None) -> Optional[str]:
    if value is None:
        return None
    try:
        x = float(value)
    except ValueError:
        raise UsageError(f"--{name} expects a number, got {value!r}") from None
    if not x > 0 or (upper is not None and not x < upper):
        bound = f"(0, {upper:g})" if upper is not None else "(0, inf)"
        raise UsageError(f"--{name} must lie in {bound}, got {value}")
    return value


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_detect(args: argparse.Namespace, out: _Out) -> int:
    status = OK
    for g in _read_graphs(args.input, args.format):
        rep = detect_forbidden(g, max_family_k=args.budget)
        out.doc({"graph6": to_graph6(g), **rep.to_dict()})
        if rep.forbidden:
            status = NEGATIVE
    return status


def cmd_recognize(args: argparse.Namespace, out: _Out) -> int:
    status = OK
    for g in _read_graphs(args.input, args.format):
        part = tuple(args.partition) if args.partition else None
        if part is not None and len(part) != g.n:
            raise UsageError("--partition needs one U/W letter per vertex")
        rec = recognize_class_x(g, part)
        out.doc({"graph6": to_graph6(g), **rec.to_dict()})
        if not rec.accepted:
            _diag(f"recognize: forbidden induced {rec.witness.name} on {list(rec.witness.vertices)}")
            status = NEGATIVE
    return status


def _embed(args: argparse.Namespace, out: _Out, complement: bool) -> int:
    stage = "embed-complement" if complement else "embed-star"
    num = _backend(args)
    status = OK
    for g in _read_graphs(args.input, args.format):
        try:
            if complement:
                emb = embed_class_x_complement(g, num)
            elif args.mu is not None:
                lob = lobster_from_graph(g)
                if lob is None:
                    _diag(f"{stage}: --mu needs a basic lobster input")
                    status = NEGATIVE
                    continue
                emb = embed_lobster_star(lob, num.num(args.mu), num)
            else:
                eps = None if args.epsilon is None else num.num(args.epsilon)
                emb = embed_class_x_star(g, eps, num)
        except ForbiddenInputError as exc:
            w = exc.witness
            _diag(f"{stage}: input contains forbidden induced {w.name} on {list(w.vertices)}")
            out.doc({"graph6": to_graph6(g), "witness": w.to_dict()})
            status = NEGATIVE
            continue
        except ParameterError as exc:
            raise UsageError(str(exc)) from exc
        except TauPreconditionError as exc:
            _diag(f"{stage}: {exc}")
            status = NEGATIVE
            continue
        out.doc(embedding_to_dict(emb))
    return status


def cmd_embed_star(args: argparse.Namespace, out: _Out) -> int:
    _positive("epsilon", args.epsilon, 1 / 128)  # width bound checked by the embedder
    _positive("mu", args.mu, 1.0)
    return _embed(args, out, complement=False)


def cmd_embed_complement(args: argparse.Namespace, out: _Out) -> int:
    return _embed(args, out, complement=True)


def _embeddings(path: str) -> Iterable[Any]:
    for doc in _read_documents(path):
        if "points" not in doc:
            name = doc.get("witness", {}).get("name") if isinstance(doc.get("witness"), dict) else None
            raise FormatError(f"document is not an embedding{' (witness ' + name + ')' if name else ''}")
        yield embedding_from_dict(doc)


def cmd_verify(args: argparse.Namespace, out: _Out) -> int:
    slack = 1e-9 if args.slack is None else float(args.slack)
    if slack < 0:
        raise UsageError("--slack must be non-negative")
    graph = _read_graphs(args.graph, args.format)[0] if args.graph else None
    status = OK
    for emb in _embeddings(args.input):
        g = graph if graph is not None else emb.target
        if g.n != emb.target.n:
            raise UsageError(f"--graph has {g.n} vertices, embedding has {emb.target.n}")
        rep = verify_embedding(g, emb, slack=slack, convexity=args.convexity)
        data = rep.to_dict()
        p = emb.params
        if args.strip and emb.part is not None and p.delta is not None and p.sigma is not None:
            strip = check_strip_conditions(emb, p.delta, p.sigma, p.q_dprime or 0)
            rep.strip_ok = data["strip_ok"] = strip.ok
        out.doc(data)
        if not rep.ok or rep.strip_ok is False or rep.convexity_ok is False:
            _diag(f"verify: {len(rep.violations)} violated pair(s)"
                  + ("" if rep.strip_ok is not False else "; strip conditions fail")
                  + ("" if rep.convexity_ok is not False else "; crossing constraints fail"))
            status = NEGATIVE
    return status


def cmd_tau(args: argparse.Namespace, out: _Out) -> int:
    _positive("sigma", args.sigma, 1 / 12)
    status = OK
    for emb in _embeddings(args.input):
        try:
            res = tau_transform(emb, args.sigma, None)
        except TauPreconditionError as exc:
            _diag(f"tau: {exc}")
            status = NEGATIVE
            continue
        out.doc(embedding_to_dict(res))
    return status


def cmd_gen_family(args: argparse.Namespace, out: _Out) -> int:
    try:
        g = generate_family(args.family, args.k)
    except GraphError as exc:
        raise UsageError(str(exc)) from exc
    out.line(to_graph6(g))
    return OK


def cmd_gen_member(args: argparse.Namespace, out: _Out) -> int:
    if args.size < 1:
        raise UsageError("--size must be positive")
    for i in range(args.count):
        out.line(to_graph6(generate_random_member(args.seed + i, args.size)))
    return OK


def _search_config(args: argparse.Namespace) -> SearchConfig:
    slack = 1e-3 if args.slack is None else float(args.slack)
    try:
        return SearchConfig(restarts=args.budget, iterations=args.iterations, seed=args.seed,
                            target_slack=slack)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_search(args: argparse.Namespace, out: _Out) -> int:
    cfg = _search_config(args)
    status = OK
    for g in _read_graphs(args.input, args.format):
        cert = certify_udg(g, cfg)
        data = {"graph6": to_graph6(g), **cert.to_dict()}
        data.pop("vertex")
        data["embedding"] = None if cert.embedding is None else embedding_to_dict(cert.embedding)
        out.doc(data)
        if not cert.ok:
            _diag("search: inconclusive (this is not a proof of non-realizability)")
            status = NEGATIVE
    return status


def cmd_minimality(args: argparse.Namespace, out: _Out) -> int:
    cfg = _search_config(args)
    status = OK
    for g in _read_graphs(args.input, args.format):
        rows = minimality_check(g, cfg)
        out.doc({"graph6": to_graph6(g), "deletions": [r.to_dict() for r in rows]})
        if not all(r.ok for r in rows):
            status = NEGATIVE
    return status


def cmd_plot(args: argparse.Namespace, out: _Out) -> int:
    emb = next(iter(_embeddings(args.input)))
    out.fh.write(embedding_svg(emb, title=args.title or emb.kind, circles=args.circles))
    return OK


def cmd_catalog(args: argparse.Namespace, out: _Out) -> int:
    entries = builtin_catalog() + derived_obstructions()
    manifest = []
    for i, e in enumerate(entries):
        code = to_graph6(e.graph)
        manifest.append({"index": i, "name": e.name, "kind": e.kind, "source": e.source,
                         "aliases": list(e.aliases), "n": e.graph.n, "graph6": code})
        if not args.json:
            out.line(code)
    if args.json:
        out.doc(manifest)
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=1)
    return OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="udgkit", description="Unit disk graph obstructions and certified embeddings.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("input", nargs="?", default="-", help="graph file (default: stdin)")
        sp.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
        sp.add_argument("-o", "--output")
        return sp

    def precision(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--precision", type=int, default=DEFAULT_DPS, help="decimal digits for mp arithmetic")
        sp.add_argument("--float", action="store_true", help="use IEEE doubles instead")

    sp = graph_cmd("detect", "scan for catalogued obstructions")
    sp.add_argument("--budget", type=int, default=None, help="largest family index to instantiate")
    sp.set_defaults(func=cmd_detect)

    sp = graph_cmd("recognize", "decompose a bipartite graph or return a forbidden witness")
    sp.add_argument("--partition", help="U/W string fixing the bipartition")
    sp.set_defaults(func=cmd_recognize)

    sp = graph_cmd("embed-star", "strip embedding of the starred graph")
    sp.add_argument("--epsilon")
    sp.add_argument("--mu", help="use the four-line lobster construction with this spacing")
    precision(sp)
    sp.set_defaults(func=cmd_embed_star)

    sp = graph_cmd("embed-complement", "embedding of the complement")
    precision(sp)
    sp.set_defaults(func=cmd_embed_complement)

    sp = sub.add_parser("verify", help="check an embedding document")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--graph", help="verify against this graph instead of the embedded target")
    sp.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    sp.add_argument("--slack")
    sp.add_argument("--strip", action="store_true", help="also check the strip conditions")
    sp.add_argument("--convexity", action="store_true", help="also check crossing constraints")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tau", help="apply the polar map to a strip embedding")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--sigma")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_tau)

    sp = sub.add_parser("gen-family", help="member of an infinite forbidden family")
    sp.add_argument("family", choices=sorted(FAMILIES))
    sp.add_argument("k", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen_family)

    sp = sub.add_parser("gen-member", help="random class member")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=30)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen_member)

    for name, func, help in (("search", cmd_search, "constructions, then numerical search"),
                             ("minimality", cmd_minimality, "certify every one-vertex deletion")):
        sp = graph_cmd(name, help)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=20, help="number of restarts")
        sp.add_argument("--iterations", type=int, default=3000)
        sp.add_argument("--slack", help="target separation of the potential")
        sp.set_defaults(func=func)

    sp = sub.add_parser("plot", help="SVG drawing of an embedding")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--circles", action="store_true", help="draw the radius-1/2 disks")
    sp.add_argument("--title")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("catalog", help="catalogue utilities")
    csub = sp.add_subparsers(dest="action", required=True)
    dp = csub.add_parser("dump", help="emit every catalogued graph as graph6")
    dp.add_argument("--manifest", help="also write a JSON name manifest here")
    dp.add_argument("--json", action="store_true", help="print the manifest instead of graph6 lines")
    dp.add_argument("-o", "--output")
    dp.set_defaults(func=cmd_catalog)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(getattr(args, "output", None))
    try:
        return args.func(args, out)
    except (UsageError, FormatError) as exc:
        _diag(f"{args.command}: {exc}")
        return USAGE
    except RecognitionInternalError as exc:
        _diag(f"{args.command}: internal error: {exc}")
        return INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort stage tag
        _diag(f"{args.command}: internal error: {type(exc).__name__}: {exc}")
        return INTERNAL
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())
