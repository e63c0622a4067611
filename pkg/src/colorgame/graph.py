"""Graph type, construction primitives and structural metrics.

Vertices are dense integers ``0..n-1``.  Each vertex carries a role: ``-1``
for an internal vertex, or the id of its parent for a leaf.  Construction
annotations (spine label, cycle id, path id, component) live in a parallel
tuple so that the game engine can ignore them entirely.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .errors import InvalidParameter, NotACactus

INTERNAL = -1


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph with leaf roles.

    ``symmetries`` holds vertex permutations (as tuples ``perm[v]``) that a
    generator claims to be automorphisms; the solver only uses them after
    :func:`validate_symmetry` has confirmed them.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    roles: tuple[int, ...]
    annotations: tuple[dict | None, ...] = field(default=())
    symmetries: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if not self.annotations:
            object.__setattr__(self, "annotations", (None,) * self.n)

    # -- construction ---------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], roles=None,
                   annotations=None, symmetries=()) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InvalidParameter(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range")
            if v in nbrs[u]:
                raise InvalidParameter(f"parallel edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in nbrs)
        roles = tuple(roles) if roles is not None else (INTERNAL,) * n
        for v, r in enumerate(roles):
            if r != INTERNAL and adj[v] != (r,):
                raise InvalidParameter(f"leaf {v} must have exactly its parent {r} as neighbor")
        ann = tuple(annotations) if annotations is not None else (None,) * n
        return cls(n, adj, roles, ann, tuple(tuple(p) for p in symmetries))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def star(cls, leaves: int, tag_leaves: bool = False) -> "Graph":
        roles = [INTERNAL] + [0 if tag_leaves else INTERNAL] * leaves
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], roles)

    # -- queries --------------------------------------------------------
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def is_leaf(self, v: int) -> bool:
        return self.roles[v] != INTERNAL

    def leaves_of(self, v: int) -> list[int]:
        return [u for u in self.adj[v] if self.roles[u] == v]

    def internal_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.roles[v] == INTERNAL]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def structurally_equal(self, other: "Graph") -> bool:
        return (self.n == other.n and self.adj == other.adj and self.roles == other.roles
                and self.annotations == other.annotations
                and self.symmetries == other.symmetries)

    def with_symmetries(self, perms) -> "Graph":
        return Graph(self.n, self.adj, self.roles, self.annotations,
                     tuple(tuple(p) for p in perms))

    def with_leaf_roles(self) -> "Graph":
        """Tag every degree-1 vertex hanging off a vertex of degree >= 2 as a leaf."""
        roles = list(self.roles)
        for v in range(self.n):
            if len(self.adj[v]) == 1 and len(self.adj[self.adj[v][0]]) >= 2:
                roles[v] = self.adj[v][0]
        return Graph(self.n, self.adj, tuple(roles), self.annotations, self.symmetries)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count}, leaves={sum(r >= 0 for r in self.roles)})"


class GraphBuilder:
    """Mutable accumulator used by the generators; freeze with :meth:`build`."""

    def __init__(self, graph: Graph | None = None):
        self.nbrs: list[set[int]] = []
        self.roles: list[int] = []
        self.annotations: list[dict | None] = []
        self.next_cycle = 0
        self.next_path = 0
        if graph is not None:
            self.nbrs = [set(a) for a in graph.adj]
            self.roles = list(graph.roles)
            self.annotations = [dict(a) if a else None for a in graph.annotations]
            for a in graph.annotations:
                if a and "cycle" in a:
                    self.next_cycle = max(self.next_cycle, a["cycle"] + 1)
                if a and "path" in a:
                    self.next_path = max(self.next_path, a["path"] + 1)

    def add_vertex(self, role: int = INTERNAL, annotation: dict | None = None) -> int:
        self.nbrs.append(set())
        self.roles.append(role)
        self.annotations.append(annotation)
        return len(self.nbrs) - 1

    def add_edge(self, u: int, v: int) -> None:
        self.nbrs[u].add(v)
        self.nbrs[v].add(u)

    def attach_cycle_with_path(self, v: int, cycle_len: int, path_len: int) -> tuple[list[int], list[int]]:
        """Returns (path vertices v..c0, cycle vertices c0..c_{len-1}) in order."""
        if cycle_len < 3 or path_len < 1:
            raise InvalidParameter("need cycle_len >= 3 and path_len >= 1")
        if self.roles[v] != INTERNAL:
            raise InvalidParameter(f"vertex {v} is a leaf")
        cid, pid = self.next_cycle, self.next_path
        self.next_cycle += 1
        self.next_path += 1
        comp = (self.annotations[v] or {}).get("component")
        extra = {} if comp is None else {"component": comp}
        path = [v]
        for _ in range(path_len - 1):
            u = self.add_vertex(annotation={"path": pid, **extra})
            self.add_edge(path[-1], u)
            path.append(u)
        cyc = [self.add_vertex(annotation={"cycle": cid, **extra}) for _ in range(cycle_len)]
        for i in range(cycle_len):
            self.add_edge(cyc[i], cyc[(i + 1) % cycle_len])
        self.add_edge(path[-1], cyc[0])
        path.append(cyc[0])
        return path, cyc

    def attach_leaves(self, v: int, count: int) -> list[int]:
        if self.roles[v] != INTERNAL:
            raise InvalidParameter(f"vertex {v} is a leaf")
        out = []
        for _ in range(count):
            u = self.add_vertex(role=v)
            self.add_edge(v, u)
            out.append(u)
        return out

    def build(self, symmetries=()) -> Graph:
        return Graph(len(self.nbrs), tuple(tuple(sorted(s)) for s in self.nbrs), tuple(self.roles),
                     tuple(self.annotations), tuple(tuple(p) for p in symmetries))


def attach_cycle_with_path(g: Graph, v: int, cycle_len: int, path_len: int) -> Graph:
    if not 0 <= v < g.n:
        raise InvalidParameter(f"no vertex {v}")
    b = GraphBuilder(g)
    b.attach_cycle_with_path(v, cycle_len, path_len)
    return b.build()


def attach_leaves(g: Graph, v: int, count: int) -> Graph:
    if not 0 <= v < g.n:
        raise InvalidParameter(f"no vertex {v}")
    b = GraphBuilder(g)
    b.attach_leaves(v, count)
    return b.build()


# -- metrics --------------------------------------------------------------

def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for s in range(g.n):
        if len(g.adj[s]) < 2:
            continue
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def _blocks(g: Graph) -> list[tuple[set[int], int]]:
    out = []
    for edges in nx.biconnected_component_edges(g.to_networkx()):
        verts = {x for e in edges for x in e}
        out.append((verts, len(edges)))
    return out


def is_cactus(g: Graph) -> bool:
    """Every biconnected block is a single edge or a single cycle."""
    return all(m == 1 or m == len(vs) for vs, m in _blocks(g))


def cycles_of_cactus(g: Graph) -> list[set[int]]:
    blocks = _blocks(g)
    if any(m != 1 and m != len(vs) for vs, m in blocks):
        raise NotACactus("some block is neither an edge nor a cycle")
    return [vs for vs, m in blocks if m >= 3]


def cycle_distance(g: Graph) -> float:
    """Minimum distance between vertices lying on two distinct cycles."""
    cycles = cycles_of_cactus(g)
    if len(cycles) < 2:
        return math.inf
    best = math.inf
    for i, cyc in enumerate(cycles):
        others = set().union(*(c for j, c in enumerate(cycles) if j != i))
        if cyc & others:
            return 0
        dist = {v: 0 for v in cyc}
        q = deque(cyc)
        while q:
            u = q.popleft()
            if dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    if w in others:
                        best = min(best, dist[w])
                    q.append(w)
    return best


def validate_symmetry(g: Graph, perm: Sequence[int]) -> bool:
    """True iff ``perm`` is an automorphism mapping leaves to leaves."""
    if len(perm) != g.n or sorted(perm) != list(range(g.n)):
        return False
    for v in range(g.n):
        if g.is_leaf(v) != g.is_leaf(perm[v]):
            return False
        image = sorted(perm[w] for w in g.adj[v])
        if tuple(image) != g.adj[perm[v]]:
            return False
    return True
