"""Compact positions over a region of the graph.

A :class:`Position` describes the game restricted to a set of *core*
internal vertices.  Leaves of core vertices are summarized per parent by the
set of colors already on them and the number still uncolored (leaf twins
are interchangeable, so nothing else matters).  Internal neighbors of the
core that are not themselves core form the *boundary*: their colors are
tracked, but not their own neighborhoods.

When the region is the whole set of internal vertices the position is an
exact, twin-quotiented copy of the game.  When it is a proper part
(``open`` structure) it over-approximates Alice: she may color a boundary
vertex with any color not seen on its known neighbors, and every move that
touches neither the core, the core leaves nor the boundary is folded into
a single ``pass``.  A Bob win proven on the region is then a Bob win in
the real game as long as Bob only colors leaves of core vertices.

Moves are ``(kind, index, color)`` triples on local indices, with kinds
:data:`VERTEX`, :data:`LEAF` (a leaf of the core vertex ``index``) and
:data:`PASS`.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .engine import ALICE, BOB, GameState, Move, full_mask, other
from .graph import INTERNAL, Graph

VERTEX, LEAF, PASS = 0, 1, 2
PASS_MOVE = (PASS, -1, 0)


class Structure:
    """Interned local graph: core vertices ``0..n_core-1`` then boundary."""

    _interned: dict[tuple, "Structure"] = {}

    def __init__(self, adj, n_core, open_):
        self.adj = adj
        self.n_core = n_core
        self.n = len(adj)
        self.open = open_
        self.id = len(Structure._interned)
        self.cycles = _core_cycles(adj, n_core)
        self.on_cycle = {}
        for ci, cyc in enumerate(self.cycles):
            for v in cyc:
                self.on_cycle.setdefault(v, []).append(ci)

    @classmethod
    def get(cls, adj: tuple[tuple[int, ...], ...], n_core: int, open_: bool) -> "Structure":
        key = (adj, n_core, open_)
        s = cls._interned.get(key)
        if s is None:
            s = cls._interned[key] = cls(adj, n_core, open_)
        return s

    def to_json(self) -> dict:
        return {"n_core": self.n_core, "open": self.open, "adj": [list(a) for a in self.adj]}


def _core_cycles(adj, n_core) -> list[tuple[int, ...]]:
    """Cycles of the core subgraph that form whole biconnected blocks, in cyclic order."""
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(n_core))
    g.add_edges_from((u, v) for u in range(n_core) for v in adj[u] if v < n_core and u < v)
    out = []
    for edges in nx.biconnected_component_edges(g):
        verts = {x for e in edges for x in e}
        if len(edges) >= 3 and len(edges) == len(verts):
            start = min(verts)
            order = [start]
            prev = None
            cur = start
            while True:
                nxt = min(w for w in adj[cur] if w in verts and w != prev and (w != start or len(order) == len(verts)))
                if nxt == start:
                    break
                order.append(nxt)
                prev, cur = cur, nxt
            out.append(tuple(order))
    return sorted(out)


class Position:
    """Immutable region position; see the module docstring."""

    __slots__ = ("struct", "labels", "colors", "lmask", "lfree", "phi", "k", "to_move")

    def __init__(self, struct, labels, colors, lmask, lfree, k, to_move, phi=None):
        self.struct = struct
        self.labels = labels
        self.colors = colors
        self.lmask = lmask
        self.lfree = lfree
        self.k = k
        self.to_move = to_move
        if phi is None:
            adj = struct.adj
            phi = tuple(_nbr_mask(adj[i], colors) | lmask[i] for i in range(struct.n_core))
        self.phi = phi

    # -- construction ---------------------------------------------------
    @classmethod
    def from_state(cls, s: GameState, core: Sequence[int] | None = None) -> "Position":
        """Region position of ``s``; ``core`` defaults to every internal vertex."""
        g = s.graph
        if core is None:
            core = [v for v in range(g.n) if g.roles[v] == INTERNAL]
        core = list(core)
        core_set = set(core)
        bnd = []
        seen = set(core)
        for v in core:
            for w in g.adj[v]:
                if g.roles[w] == v and w not in core_set:
                    continue
                if w not in seen:
                    seen.add(w)
                    bnd.append(w)
        labels = tuple(core + bnd)
        index = {v: i for i, v in enumerate(labels)}
        adj = tuple(tuple(sorted(index[w] for w in g.adj[v] if w in index and not _is_leaf_of(g, w, v, core_set)))
                    for v in labels)
        total_internal = sum(1 for r in g.roles if r == INTERNAL)
        open_ = bool(bnd) or len(core) < total_internal
        struct = Structure.get(adj, len(core), open_)
        lmask, lfree = [], []
        for v in core:
            m = f = 0
            for w in g.adj[v]:
                if g.roles[w] == v:
                    c = s.colors[w]
                    if c:
                        m |= 1 << (c - 1)
                    else:
                        f += 1
            lmask.append(m)
            lfree.append(f)
        colors = tuple(s.colors[v] for v in labels)
        return cls(struct, labels, colors, tuple(lmask), tuple(lfree), s.k, s.to_move)

    def narrow(self, core_local: Sequence[int]) -> "Position":
        """Restrict to the core vertices ``core_local`` (local indices, new order)."""
        core_local = list(core_local)
        adj = self.struct.adj
        n_core = self.struct.n_core
        if any(not 0 <= i < n_core for i in core_local) or len(set(core_local)) != len(core_local):
            raise ValueError("narrowing must pick distinct core vertices")
        inside = set(core_local)
        bnd = []
        for i in core_local:
            for j in adj[i]:
                if j not in inside:
                    inside.add(j)
                    bnd.append(j)
        order = core_local + bnd
        index = {j: t for t, j in enumerate(order)}
        nadj = tuple(tuple(sorted(index[j] for j in adj[i] if j in index)) for i in order)
        struct = Structure.get(nadj, len(core_local), True)
        return Position(struct, tuple(self.labels[i] for i in order),
                        tuple(self.colors[i] for i in order),
                        tuple(self.lmask[i] for i in core_local),
                        tuple(self.lfree[i] for i in core_local), self.k, self.to_move,
                        tuple(self.phi[i] for i in core_local))

    # -- queries --------------------------------------------------------
    @property
    def n_core(self) -> int:
        return self.struct.n_core

    def index_of(self, label: int) -> int:
        return self.labels.index(label)

    def status(self) -> tuple[str, int | None]:
        """``("bob", i)``, ``("alice", None)`` or ``("ongoing", None)``.

        On an open region "alice" means every core vertex is colored, so
        Bob can no longer surround anything he is tracking.
        """
        full = full_mask(self.k)
        colors = self.colors
        done = True
        for i in range(self.struct.n_core):
            if colors[i] == 0:
                if self.phi[i] == full:
                    return "bob", i
                done = False
            elif self.k == 1 and self.lfree[i]:
                # an uncolored leaf under the only color is itself surrounded
                return "bob", i
        if done and (self.struct.open or not any(self.lfree)):
            return "alice", None
        return "ongoing", None

    def moves(self) -> list[tuple[int, int, int]]:
        """All moves for the player to move (over-approximated on the boundary)."""
        k = self.k
        out = []
        n_core = self.struct.n_core
        colors = self.colors
        for i in range(n_core):
            if colors[i] == 0:
                m = self.phi[i]
                out.extend((VERTEX, i, c) for c in range(1, k + 1) if not m >> (c - 1) & 1)
        for i in range(n_core):
            if self.lfree[i]:
                ci = colors[i]
                out.extend((LEAF, i, c) for c in range(1, k + 1) if c != ci)
        adj = self.struct.adj
        for j in range(n_core, self.struct.n):
            if colors[j] == 0:
                m = _nbr_mask(adj[j], colors)
                out.extend((VERTEX, j, c) for c in range(1, k + 1) if not m >> (c - 1) & 1)
        if self.struct.open:
            out.append(PASS_MOVE)
        return out

    def is_legal(self, mv) -> bool:
        kind, i, c = mv
        if kind == PASS:
            return self.struct.open
        if not 1 <= c <= self.k or not 0 <= i < self.struct.n:
            return False
        if kind == LEAF:
            return i < self.struct.n_core and self.lfree[i] > 0 and self.colors[i] != c
        if kind != VERTEX or self.colors[i]:
            return False
        if i < self.struct.n_core:
            return not self.phi[i] >> (c - 1) & 1
        return not _nbr_mask(self.struct.adj[i], self.colors) >> (c - 1) & 1

    def apply(self, mv) -> "Position":
        kind, i, c = mv
        nxt = other(self.to_move)
        if kind == PASS:
            return Position(self.struct, self.labels, self.colors, self.lmask, self.lfree, self.k, nxt, self.phi)
        bit = 1 << (c - 1)
        if kind == LEAF:
            lmask = list(self.lmask)
            lfree = list(self.lfree)
            lmask[i] |= bit
            lfree[i] -= 1
            phi = list(self.phi)
            phi[i] |= bit
            return Position(self.struct, self.labels, self.colors, tuple(lmask), tuple(lfree), self.k, nxt,
                            tuple(phi))
        colors = list(self.colors)
        colors[i] = c
        n_core = self.struct.n_core
        phi = list(self.phi)
        for j in self.struct.adj[i]:
            if j < n_core:
                phi[j] |= bit
        return Position(self.struct, self.labels, tuple(colors), self.lmask, self.lfree, self.k, nxt, tuple(phi))

    def relabel(self, perm: Sequence[int]) -> "Position":
        """Same position with every color ``c`` renamed ``perm[c]`` (``perm[0] == 0``)."""
        return Position(self.struct, self.labels, tuple(perm[c] for c in self.colors),
                        tuple(permute_mask(m, perm) for m in self.lmask), self.lfree, self.k,
                        self.to_move, tuple(permute_mask(m, perm) for m in self.phi))

    def phi_set(self, i: int) -> frozenset[int]:
        return frozenset(c for c in range(1, self.k + 1) if self.phi[i] >> (c - 1) & 1)

    # -- keys -----------------------------------------------------------
    def canonical(self) -> tuple[tuple, list[int]]:
        """Palette-canonical key and the color renaming that produced it."""
        k = self.k
        perm = [0] * (k + 1)
        nxt = 1
        relabeled = []
        for c in self.colors:
            if c and not perm[c]:
                perm[c] = nxt
                nxt += 1
            relabeled.append(perm[c])
        free_src = [c for c in range(1, k + 1) if not perm[c]]
        # phi can carry colors of vertices outside the region, so it is keyed too
        masks = self.lmask + self.phi
        if free_src and any(masks):
            best = None
            bestp = None
            for targets in itertools.permutations(range(nxt, k + 1)):
                p = list(perm)
                for c, t in zip(free_src, targets):
                    p[c] = t
                cand = tuple(permute_mask(m, p) for m in masks)
                if best is None or cand < best:
                    best, bestp = cand, p
            perm = bestp
            cmasks = best
        else:
            for c, t in zip(free_src, range(nxt, k + 1)):
                perm[c] = t
            cmasks = tuple(permute_mask(m, perm) for m in masks)
        key = (self.to_move, self.struct.id, tuple(relabeled), cmasks, self.lfree)
        return key, perm

    def key(self) -> tuple:
        return self.canonical()[0]

    # -- conversion -----------------------------------------------------
    def to_game_move(self, s: GameState, mv) -> Move:
        """Concrete move in ``s`` realizing the region move ``mv``."""
        kind, i, c = mv
        if kind == PASS:
            raise ValueError("a pass has no concrete counterpart")
        v = self.labels[i]
        if kind == VERTEX:
            return Move(v, c)
        for w in s.graph.adj[v]:
            if s.graph.roles[w] == v and s.colors[w] == 0:
                return Move(w, c)
        raise ValueError(f"vertex {v} has no uncolored leaf")

    def from_game_move(self, s: GameState, m: Move):
        """Region move corresponding to the concrete move ``m`` played in ``s``."""
        g = s.graph
        v = m.vertex
        try:
            return (VERTEX, self.labels.index(v), m.color)
        except ValueError:
            pass
        p = g.roles[v]
        if p != INTERNAL:
            try:
                i = self.labels.index(p)
            except ValueError:
                return PASS_MOVE
            if i < self.struct.n_core:
                return (LEAF, i, m.color)
        return PASS_MOVE

    def __repr__(self):
        return (f"Position(core={self.struct.n_core}, boundary={self.struct.n - self.struct.n_core}, "
                f"to_move={self.to_move}, colors={self.colors})")


def _is_leaf_of(g: Graph, w: int, v: int, core_set) -> bool:
    return g.roles[w] == v and v in core_set


def _nbr_mask(nbrs: Iterable[int], colors) -> int:
    m = 0
    for j in nbrs:
        c = colors[j]
        if c:
            m |= 1 << (c - 1)
    return m


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    c = 1
    while mask:
        if mask & 1:
            out |= 1 << (perm[c] - 1)
        mask >>= 1
        c += 1
    return out


def permute_move(mv, perm):
    kind, i, c = mv
    return (kind, i, perm[c]) if kind != PASS else mv


def inverse_perm(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for c, t in enumerate(perm):
        inv[t] = c
    return inv


def local_symmetries(pos: Position, graph_syms: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Graph permutations that map the region onto itself, as local permutations."""
    cache = _local_sym_cache.get((pos.labels, pos.struct.n_core, id(graph_syms)))
    if cache is not None:
        return cache
    index = {v: i for i, v in enumerate(pos.labels)}
    n_core = pos.struct.n_core
    out = []
    for perm in graph_syms:
        loc = []
        for i, v in enumerate(pos.labels):
            j = index.get(perm[v])
            if j is None or (j < n_core) != (i < n_core):
                break
            loc.append(j)
        else:
            t = tuple(loc)
            if t != tuple(range(len(t))):
                out.append(t)
    _local_sym_cache[(pos.labels, pos.struct.n_core, id(graph_syms))] = out
    return out


_local_sym_cache: dict = {}


def move_classes(pos: Position, local_syms: Sequence[Sequence[int]] = ()) -> list[tuple[tuple, int]]:
    """Partition ``pos.moves()`` into symmetry classes.

    Merges moves related by a palette permutation fixing every color in use
    and by local automorphisms preserving the position.  Class size counts
    concrete moves: a leaf move stands for one per uncolored leaf.
    Representatives are the smallest member.
    """
    moves = pos.moves()
    index = {m: t for t, m in enumerate(moves)}
    parent = list(range(len(moves)))

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    used = 0
    for c in pos.colors:
        if c:
            used |= 1 << (c - 1)
    for m in pos.phi:
        used |= m
    unused = [c for c in range(1, pos.k + 1) if not used >> (c - 1) & 1]
    if len(unused) > 1:
        u0 = unused[0]
        for t, (kind, i, c) in enumerate(moves):
            if kind != PASS and c in unused and c != u0:
                union(t, index[(kind, i, u0)])
    colors, lmask, lfree, phi = pos.colors, pos.lmask, pos.lfree, pos.phi
    n_core = pos.struct.n_core
    for perm in local_syms:
        if any(colors[perm[i]] != colors[i] for i in range(len(perm))):
            continue
        if any(lmask[perm[i]] != lmask[i] or lfree[perm[i]] != lfree[i] or phi[perm[i]] != phi[i]
               for i in range(n_core)):
            continue
        for t, (kind, i, c) in enumerate(moves):
            if kind != PASS:
                union(t, index[(kind, perm[i], c)])
    groups: dict[int, int] = {}
    for t, (kind, i, c) in enumerate(moves):
        r = find(t)
        groups[r] = groups.get(r, 0) + (lfree[i] if kind == LEAF else 1)
    return [(moves[r], size) for r, size in sorted(groups.items())]


def total_move_weight(pos: Position) -> int:
    return sum(pos.lfree[i] if kind == LEAF else 1 for kind, i, _ in pos.moves())


__all__ = ["Position", "Structure", "VERTEX", "LEAF", "PASS", "PASS_MOVE", "move_classes",
           "local_symmetries", "permute_move", "inverse_perm", "ALICE", "BOB"]
