"""Generators for the graph families used by the game experiments.

The theorem graph is two copies of a component built on the spine
``x y z y' x'``; every spine vertex carries two odd cycles hung on paths,
and every internal vertex gets the same number of leaves.  Vertex ids are
laid out as: component 0 internals, component 1 internals, then the leaves
of each internal vertex in order.  Annotations name every internal vertex
by ``owner`` (spine label), ``slot`` (1 or 2) and ``pos`` along its path or
cycle, which is what the Bob policy navigates by.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

import networkx as nx

from .errors import InvalidParameter, LimitExceeded, NotAForest
from .graph import INTERNAL, Graph, GraphBuilder

SPINE = ("x", "y", "z", "y'", "x'")
MIRROR = {"x": "x'", "y": "y'", "z": "z", "y'": "y", "x'": "x"}


@dataclass(frozen=True)
class TheoremParams:
    cycle_len: int = 3
    path_len: int = 1
    leaves: int = 8

    def __post_init__(self):
        if self.cycle_len < 3 or self.cycle_len % 2 == 0:
            raise InvalidParameter("cycle_len must be odd and at least 3")
        if self.path_len < 1:
            raise InvalidParameter("path_len must be at least 1")
        if self.leaves < 1:
            raise InvalidParameter("leaves must be at least 1")


def _component_layout(p: TheoremParams) -> list[tuple]:
    """Role tuples of one component's internal vertices, in id order.

    Roles are ``("spine", s)``, ``("path", s, slot, t)`` for the path
    interior (t = 1..path_len-1, counted from the spine) and
    ``("cycle", s, slot, t)`` with t = 0 the cycle vertex the path reaches.
    """
    roles = [("spine", s) for s in SPINE]
    for s in SPINE:
        for slot in (1, 2):
            roles.extend(("path", s, slot, t) for t in range(1, p.path_len))
            roles.extend(("cycle", s, slot, t) for t in range(p.cycle_len))
    return roles


def build_theorem_graph(p: TheoremParams | int = None, path_len: int | None = None,
                        leaves: int | None = None) -> Graph:
    """Two-component cactus on which Bob wins the 4-color game.

    Accepts either a :class:`TheoremParams` or the three integers.
    """
    if not isinstance(p, TheoremParams):
        p = TheoremParams(p if p is not None else 3, path_len if path_len is not None else 1,
                          leaves if leaves is not None else 8)
    layout = _component_layout(p)
    per = len(layout)
    b = GraphBuilder()
    ids: dict[tuple, int] = {}
    next_cycle = next_path = 0
    for comp in (0, 1):
        for role in layout:
            ann = {"component": comp}
            if role[0] == "spine":
                ann["spine"] = role[1]
            else:
                ann.update(owner=role[1], slot=role[2], pos=role[3])
            ids[(comp,) + role] = b.add_vertex(annotation=ann)
        for i, s in enumerate(SPINE[:-1]):
            b.add_edge(ids[(comp, "spine", s)], ids[(comp, "spine", SPINE[i + 1])])
        for s in SPINE:
            for slot in (1, 2):
                chain = [ids[(comp, "spine", s)]]
                chain += [ids[(comp, "path", s, slot, t)] for t in range(1, p.path_len)]
                cyc = [ids[(comp, "cycle", s, slot, t)] for t in range(p.cycle_len)]
                for t in range(1, p.path_len):
                    b.annotations[chain[t]]["path"] = next_path
                for v in cyc:
                    b.annotations[v]["cycle"] = next_cycle
                next_path += 1
                next_cycle += 1
                for u, v in zip(chain, chain[1:] + [cyc[0]]):
                    b.add_edge(u, v)
                for t in range(p.cycle_len):
                    b.add_edge(cyc[t], cyc[(t + 1) % p.cycle_len])
    leaf_ids = {}
    for v in range(2 * per):
        leaf_ids[v] = b.attach_leaves(v, p.leaves)
    n = len(b.nbrs)

    def extend(internal_map: dict[int, int]) -> tuple[int, ...]:
        perm = list(range(n))
        for v, w in internal_map.items():
            perm[v] = w
            for a, c in zip(leaf_ids[v], leaf_ids[w]):
                perm[a] = c
        return tuple(perm)

    def role_map(comp, f):
        out = {}
        for role in layout:
            out[ids[(comp,) + role]] = ids[(comp,) + f(role)]
        return out

    syms = [extend({v: (v + per) % (2 * per) for v in range(2 * per)})]
    for comp in (0, 1):
        syms.append(extend(role_map(comp, lambda r: (r[0], MIRROR[r[1]]) + r[2:])))
        for s in SPINE:
            syms.append(extend(role_map(comp, lambda r, s=s: r[:2] + (3 - r[2],) + r[3:]
                                        if r[0] != "spine" and r[1] == s else r)))
            for slot in (1, 2):
                syms.append(extend(role_map(
                    comp, lambda r, s=s, slot=slot: ("cycle", s, slot, (-r[3]) % p.cycle_len)
                    if r[0] == "cycle" and r[1] == s and r[2] == slot else r)))
    if p.leaves >= 2:
        for v in range(2 * per):
            perm = list(range(n))
            a, c = leaf_ids[v][0], leaf_ids[v][1]
            perm[a], perm[c] = c, a
            syms.append(tuple(perm))
    return b.build(symmetries=[s for s in syms if s != tuple(range(n))])


def theorem_roles(g: Graph) -> dict[tuple, int]:
    """Map ``(component, kind, ...)`` role tuples back to vertex ids."""
    out = {}
    for v, ann in enumerate(g.annotations):
        if not ann or g.roles[v] != INTERNAL:
            continue
        comp = ann.get("component")
        if "spine" in ann:
            out[(comp, "spine", ann["spine"])] = v
        elif "cycle" in ann:
            out[(comp, "cycle", ann["owner"], ann["slot"], ann["pos"])] = v
        elif "path" in ann:
            out[(comp, "path", ann["owner"], ann["slot"], ann["pos"])] = v
    return out


def build_sidorowicz(triangles: int = 7, leaves: int = 4) -> Graph:
    """Chain of triangles sharing spine vertices, leaves placed as in the classic drawing.

    Spine vertices ``s_0..s_T`` and tops ``t_0..t_{T-1}``; triangle ``i`` is
    ``s_i s_{i+1} t_i``.  Every ``s_i`` with ``i < T``, every top and the
    final ``s_T`` get ``leaves`` leaves.
    """
    if triangles < 1 or leaves < 0:
        raise InvalidParameter("need triangles >= 1 and leaves >= 0")
    b = GraphBuilder()
    spine = [b.add_vertex(annotation={"spine": i}) for i in range(triangles + 1)]
    tops = [b.add_vertex(annotation={"cycle": i}) for i in range(triangles)]
    for i in range(triangles):
        b.add_edge(spine[i], spine[i + 1])
        b.add_edge(spine[i], tops[i])
        b.add_edge(tops[i], spine[i + 1])
    for v in spine[:-1] + tops + [spine[-1]]:
        b.attach_leaves(v, leaves)
    return b.build()


def build_thin4_forest(edges: Sequence[Sequence[int]], replaced: Sequence[Sequence[int]] = (),
                       n: int | None = None) -> Graph:
    """Replace each edge ``uv`` in ``replaced`` by two degree-2 vertices joined to u and v."""
    edges = [tuple(sorted(e)) for e in edges]
    if n is None:
        n = max((max(e) for e in edges), default=-1) + 1
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotAForest(f"edge ({u}, {v}) closes a cycle")
        parent[ru] = rv
    rep = {tuple(sorted(e)) for e in replaced}
    if not rep <= set(edges):
        raise InvalidParameter("replaced edges must be edges of the forest")
    out = [e for e in edges if e not in rep]
    nxt = n
    for u, v in sorted(rep):
        a, c = nxt, nxt + 1
        nxt += 2
        out += [(u, a), (a, v), (u, c), (c, v)]
    return Graph.from_edges(nxt, out)


# -- small-graph corpora ---------------------------------------------------

FAMILIES = ("paths", "cycles", "stars", "trees", "cactuses", "connected")


def _from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h, ordering="sorted")
    return Graph.from_edges(h.number_of_nodes(), list(h.edges()))


def thin4_forests(n_max: int) -> Iterator[Graph]:
    """Every tree on at most ``n_max`` vertices with every subset of its edges doubled into 4-cycles."""
    for g in enumerate_small_graphs("trees", n_max):
        edges = g.edges()
        for r in range(len(edges) + 1):
            for rep in itertools.combinations(edges, r):
                yield build_thin4_forest(edges, rep, g.n)


def free_trees(n: int) -> list[Graph]:
    if n == 1:
        return [Graph.from_edges(1, [])]
    return [_from_nx(t) for t in nx.nonisomorphic_trees(n)]


def _cactuses_exact(n: int) -> list[nx.Graph]:
    """Connected cactuses on exactly ``n`` vertices, up to isomorphism."""
    levels: dict[int, list[nx.Graph]] = {1: [nx.empty_graph(1)]}
    for size in range(2, n + 1):
        buckets: dict[str, list[nx.Graph]] = {}
        for base_size in range(1, size):
            add = size - base_size
            block_lengths = [1] if add == 1 else [add + 1]
            for h in levels[base_size]:
                for v in h.nodes:
                    for length in block_lengths:
                        g2 = h.copy()
                        new = list(range(base_size, size))
                        if length == 1:
                            g2.add_edge(v, new[0])
                        else:
                            ring = [v] + new
                            for i in range(len(ring)):
                                g2.add_edge(ring[i], ring[(i + 1) % len(ring)])
                        key = nx.weisfeiler_lehman_graph_hash(g2, iterations=3)
                        bucket = buckets.setdefault(key, [])
                        if not any(nx.is_isomorphic(g2, o) for o in bucket):
                            bucket.append(g2)
        levels[size] = [g for b in buckets.values() for g in b]
    return levels[n]


def enumerate_small_graphs(family: str, n_max: int, n_min: int = 1) -> Iterator[Graph]:
    """Non-isomorphic members of ``family`` with ``n_min..n_max`` vertices.

    ``connected`` walks the graph atlas (all connected graphs up to 7
    vertices).  Cactuses are grown block by block (a pendant edge or a new
    cycle glued at one vertex) and deduplicated up to isomorphism.
    """
    if family not in FAMILIES:
        raise InvalidParameter(f"unknown family {family!r}")
    if family in ("trees", "cactuses") and n_max > 10:
        raise LimitExceeded("tree/cactus enumeration is limited to 10 vertices")
    if family == "connected" and n_max > 7:
        raise LimitExceeded("the graph atlas stops at 7 vertices")
    for n in range(max(1, n_min), n_max + 1):
        if family == "paths":
            yield Graph.path(n)
        elif family == "cycles":
            if n >= 3:
                yield Graph.cycle(n)
        elif family == "stars":
            yield Graph.star(n - 1)
        elif family == "trees":
            yield from free_trees(n)
        elif family == "cactuses":
            for h in _cactuses_exact(n):
                yield _from_nx(h)
    if family == "connected":
        for h in nx.graph_atlas_g():
            if n_min <= h.number_of_nodes() <= n_max and h.number_of_nodes() > 0 and nx.is_connected(h):
                yield _from_nx(h)


def random_connected_graph(rng: random.Random, n_min: int = 2, n_max: int = 7, p: float | None = None) -> Graph:
    n = rng.randint(n_min, n_max)
    p = rng.uniform(0.15, 0.7) if p is None else p
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))
