"""JSON serialization for graphs, game states and certificates.

Output is deterministic: dictionaries are built in a fixed field order and
written compactly, so equal inputs give byte-identical files.  Parsers are
strict; unknown fields, wrong types, duplicate edges and malformed JSON all
raise :class:`~colorgame.errors.SchemaError` whose ``path`` names the
offending field (``edges[3][1]``, ``colors[17]``...).
"""
from __future__ import annotations

import json
import os
from typing import Any

from .engine import ALICE, BOB, GameState
from .errors import IllegalMove, InvalidParameter, SchemaError
from .graph import INTERNAL, Graph

GRAPH_FIELDS = ("n", "edges", "roles", "annotations", "symmetries")
STATE_FIELDS = ("graph", "k", "colors", "to_move")


# -- text level ------------------------------------------------------------

def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}", source) from None


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SchemaError(f"cannot read file ({e.strerror})", path) from None
    return loads(text, path)


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- validation helpers ----------------------------------------------------

def _expect_dict(obj, path, allowed, required):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path)
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"unknown field {key!r}", _join(path, key))
    for key in required:
        if key not in obj:
            raise SchemaError(f"missing field {key!r}", path)


def _join(path, key):
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else str(key)


def _int(obj, path, lo=None, hi=None) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise SchemaError("expected an integer", path)
    if lo is not None and obj < lo or hi is not None and obj > hi:
        raise SchemaError(f"value {obj} out of range", path)
    return obj


def _list(obj, path) -> list:
    if not isinstance(obj, list):
        raise SchemaError("expected an array", path)
    return obj


# -- graphs ------------------------------------------------------------------

def graph_to_json(g: Graph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.edges()],
           "roles": ["internal" if r == INTERNAL else "leaf" for r in g.roles]}
    ann = {str(v): a for v, a in enumerate(g.annotations) if a}
    if ann:
        out["annotations"] = ann
    if g.symmetries:
        out["symmetries"] = [list(p) for p in g.symmetries]
    return out


def graph_from_json(obj: Any, path: str = "") -> Graph:
    _expect_dict(obj, path, GRAPH_FIELDS, ("n", "edges"))
    n = _int(obj["n"], _join(path, "n"), lo=0)
    edges = []
    seen = set()
    for i, e in enumerate(_list(obj["edges"], _join(path, "edges"))):
        ep = _join(_join(path, "edges"), i)
        pair = _list(e, ep)
        if len(pair) != 2:
            raise SchemaError("an edge has exactly two endpoints", ep)
        u = _int(pair[0], _join(ep, 0), 0, n - 1)
        v = _int(pair[1], _join(ep, 1), 0, n - 1)
        if u == v:
            raise SchemaError("self-loop", ep)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise SchemaError(f"duplicate edge {key}", ep)
        seen.add(key)
        edges.append(key)
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    roles = [INTERNAL] * n
    if "roles" in obj:
        rp = _join(path, "roles")
        raw = _list(obj["roles"], rp)
        if len(raw) != n:
            raise SchemaError(f"expected {n} roles, got {len(raw)}", rp)
        for v, r in enumerate(raw):
            if r == "leaf":
                if len(adj[v]) != 1:
                    raise SchemaError("a leaf must have exactly one neighbor", _join(rp, v))
                roles[v] = adj[v][0]
            elif r != "internal":
                raise SchemaError("role must be 'internal' or 'leaf'", _join(rp, v))
    annotations = [None] * n
    if "annotations" in obj:
        ap = _join(path, "annotations")
        raw = obj["annotations"]
        if not isinstance(raw, dict):
            raise SchemaError("expected an object", ap)
        for key, a in raw.items():
            if not key.isdigit() or int(key) >= n:
                raise SchemaError("annotation keys are vertex ids", _join(ap, key))
            if not isinstance(a, dict):
                raise SchemaError("expected an object", _join(ap, key))
            annotations[int(key)] = a
    syms = []
    if "symmetries" in obj:
        sp = _join(path, "symmetries")
        for i, perm in enumerate(_list(obj["symmetries"], sp)):
            pp = _join(sp, i)
            perm = _list(perm, pp)
            if len(perm) != n or sorted(_int(x, pp) for x in perm) != list(range(n)):
                raise SchemaError("not a permutation of the vertices", pp)
            syms.append(tuple(perm))
    try:
        return Graph.from_edges(n, edges, roles, annotations, syms)
    except InvalidParameter as e:
        raise SchemaError(str(e), path) from None


def read_graph(path: str) -> Graph:
    return graph_from_json(read_json(path))


def write_graph(path: str, g: Graph) -> None:
    write_text(path, dumps(graph_to_json(g)))


# -- states ------------------------------------------------------------------

def state_to_json(s: GameState, graph_ref: str | None = None) -> dict:
    return {"graph": graph_ref if graph_ref is not None else graph_to_json(s.graph),
            "k": s.k, "colors": list(s.colors), "to_move": s.to_move}


def state_from_json(obj: Any, graph: Graph | None = None, base_dir: str = ".", path: str = "") -> GameState:
    """Parse a state; ``graph`` overrides the stored graph, a string graph is a file path."""
    _expect_dict(obj, path, STATE_FIELDS, ("k", "colors", "to_move"))
    if graph is None:
        if "graph" not in obj:
            raise SchemaError("missing field 'graph'", path)
        ref = obj["graph"]
        if isinstance(ref, str):
            graph = read_graph(os.path.join(base_dir, ref))
        else:
            graph = graph_from_json(ref, _join(path, "graph"))
    k = _int(obj["k"], _join(path, "k"), lo=1)
    cp = _join(path, "colors")
    colors = [_int(c, _join(cp, v), 0, k) for v, c in enumerate(_list(obj["colors"], cp))]
    if len(colors) != graph.n:
        raise SchemaError(f"expected {graph.n} colors, got {len(colors)}", cp)
    to_move = obj["to_move"]
    if to_move not in (ALICE, BOB):
        raise SchemaError("to_move must be 'A' or 'B'", _join(path, "to_move"))
    try:
        return GameState.initial(graph, k, colors, to_move)
    except IllegalMove as e:
        raise SchemaError(str(e), cp) from None


def read_state(path: str, graph: Graph | None = None) -> GameState:
    return state_from_json(read_json(path), graph, os.path.dirname(path) or ".")


# -- certificates ------------------------------------------------------------

def read_certificate(path: str):
    from .solver import Certificate

    return Certificate.from_json(read_json(path))


def write_certificate(path: str, cert) -> None:
    write_text(path, dumps(cert.to_json()))
