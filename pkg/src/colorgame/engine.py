"""Rules of the coloring game: moves, forbidden sets, outcome and state keys.

Colors are ``1..k``; ``0`` marks an uncolored vertex.  Forbidden sets are
kept as bitmasks (bit ``c - 1`` set when color ``c`` is on a neighbor) and
updated incrementally, since the solvers spend most of their time here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import IllegalMove, InvalidSymmetry
from .graph import Graph, validate_symmetry

ALICE = "A"
BOB = "B"


class Move(NamedTuple):
    vertex: int
    color: int


class Status(NamedTuple):
    kind: str  # "ongoing" | "alice" | "bob"
    vertex: int | None = None

    @property
    def ongoing(self) -> bool:
        return self.kind == "ongoing"


ONGOING = Status("ongoing")
ALICE_WIN = Status("alice")


@dataclass(frozen=True)
class Verdict:
    winner: str  # "Alice" | "Bob"
    witness: int | None = None

    def to_json(self) -> dict:
        d = {"winner": self.winner}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def full_mask(k: int) -> int:
    return (1 << k) - 1


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(c + 1 for c in range(mask.bit_length()) if mask >> c & 1)


def set_to_mask(colors) -> int:
    m = 0
    for c in colors:
        m |= 1 << (c - 1)
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def other(player: str) -> str:
    return BOB if player == ALICE else ALICE


@dataclass(frozen=True, eq=False)
class GameState:
    """Immutable game position.  Use :meth:`initial` and :func:`apply_move`."""

    graph: Graph
    k: int
    colors: tuple[int, ...]
    phi: tuple[int, ...]
    to_move: str = ALICE
    move_log: tuple[Move, ...] = ()

    @classmethod
    def initial(cls, graph: Graph, k: int, colors: Sequence[int] | None = None,
                to_move: str = ALICE) -> "GameState":
        colors = tuple(colors) if colors is not None else (0,) * graph.n
        if len(colors) != graph.n:
            raise ValueError("color vector length differs from vertex count")
        phi = [0] * graph.n
        for v, c in enumerate(colors):
            if not 0 <= c <= k:
                raise IllegalMove(f"color {c} outside palette 1..{k}")
            if c:
                for w in graph.adj[v]:
                    if colors[w] == c:
                        raise IllegalMove(f"improper precoloring on edge ({v}, {w})")
                    phi[w] |= 1 << (c - 1)
        return cls(graph, k, colors, tuple(phi), to_move, ())

    def forbidden(self, v: int) -> frozenset[int]:
        return mask_to_set(self.phi[v])

    def uncolored(self) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c == 0]

    def __eq__(self, other):
        return (isinstance(other, GameState) and self.graph is other.graph and self.k == other.k
                and self.colors == other.colors and self.to_move == other.to_move)

    def __hash__(self):
        return hash((id(self.graph), self.k, self.colors, self.to_move))

    def __repr__(self):
        return f"GameState(k={self.k}, colored={sum(map(bool, self.colors))}/{self.graph.n}, to_move={self.to_move})"


def forbidden_colors(s: GameState, v: int) -> frozenset[int]:
    return mask_to_set(s.phi[v])


def status(s: GameState) -> Status:
    full = full_mask(s.k)
    done = True
    for v, c in enumerate(s.colors):
        if c == 0:
            if s.phi[v] == full:
                return Status("bob", v)
            done = False
    return ALICE_WIN if done else ONGOING


def legal_moves(s: GameState) -> list[Move]:
    out = []
    for v, c in enumerate(s.colors):
        if c == 0:
            m = s.phi[v]
            out.extend(Move(v, col) for col in range(1, s.k + 1) if not m >> (col - 1) & 1)
    return out


def is_legal(s: GameState, m: Move) -> bool:
    v, c = m
    return (0 <= v < s.graph.n and 1 <= c <= s.k and s.colors[v] == 0
            and not s.phi[v] >> (c - 1) & 1)


def apply_move(s: GameState, m: Move) -> GameState:
    v, c = m
    if not 0 <= v < s.graph.n:
        raise IllegalMove(f"no vertex {v}")
    if not 1 <= c <= s.k:
        raise IllegalMove(f"color {c} outside palette 1..{s.k}")
    if s.colors[v]:
        raise IllegalMove(f"vertex {v} already colored")
    bit = 1 << (c - 1)
    if s.phi[v] & bit:
        raise IllegalMove(f"color {c} is forbidden at vertex {v}")
    colors = list(s.colors)
    colors[v] = c
    phi = list(s.phi)
    for w in s.graph.adj[v]:
        phi[w] |= bit
    return GameState(s.graph, s.k, tuple(colors), tuple(phi), other(s.to_move),
                     s.move_log + (Move(v, c),))


# -- canonical keys --------------------------------------------------------

def _leaf_summary(s: GameState) -> list[tuple[int, int, int]]:
    """Per internal vertex with leaves: (vertex, leaf color mask, uncolored leaf count)."""
    g = s.graph
    summary: dict[int, list[int]] = {}
    for v, p in enumerate(g.roles):
        if p >= 0:
            entry = summary.setdefault(p, [0, 0])
            c = s.colors[v]
            if c:
                entry[0] |= 1 << (c - 1)
            else:
                entry[1] += 1
    return [(p, e[0], e[1]) for p, e in sorted(summary.items())]


def _permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    c = 0
    while mask:
        if mask & 1:
            out |= 1 << (perm[c + 1] - 1)
        mask >>= 1
        c += 1
    return out


def canonical_colors(vertex_colors: Sequence[int], masks: Sequence[int], k: int) -> tuple:
    """Canonical form of (colors, color masks) under palette permutations.

    Colors are first renamed by order of first appearance in
    ``vertex_colors``; the colors that never appear there are then assigned
    the permutation giving the smallest mask tuple.  Two inputs get the same
    result iff some palette permutation maps one onto the other.
    """
    perm = [0] * (k + 1)
    nxt = 1
    relabeled = []
    for c in vertex_colors:
        if c and not perm[c]:
            perm[c] = nxt
            nxt += 1
        relabeled.append(perm[c])
    free_src = [c for c in range(1, k + 1) if not perm[c]]
    if not free_src or not any(masks):
        return tuple(relabeled), tuple(_permute_mask(m, _complete(perm, free_src, range(nxt, k + 1)))
                                       for m in masks)
    best = None
    for targets in itertools.permutations(range(nxt, k + 1)):
        p = _complete(perm, free_src, targets)
        cand = tuple(_permute_mask(m, p) for m in masks)
        if best is None or cand < best:
            best = cand
    return tuple(relabeled), best


def _complete(perm, free_src, targets):
    p = list(perm)
    for c, t in zip(free_src, targets):
        p[c] = t
    return p


def canonical_key(s: GameState) -> tuple:
    """Key equal for states identical up to leaf twins and palette renaming."""
    g = s.graph
    core = [s.colors[v] if g.roles[v] < 0 else 0 for v in range(g.n)]
    summary = _leaf_summary(s)
    vc, masks = canonical_colors(core, [m for _, m, _ in summary], s.k)
    leaves = tuple((p, m, u) for (p, _, u), m in zip(summary, masks))
    core_colors = tuple(c for v, c in enumerate(vc) if g.roles[v] < 0)
    return (s.to_move, core_colors, leaves)


# -- move classes ----------------------------------------------------------

_validated: dict[tuple[int, tuple], bool] = {}


def _check_symmetry(g: Graph, perm: tuple[int, ...]) -> None:
    key = (id(g), perm)
    ok = _validated.get(key)
    if ok is None:
        ok = _validated[key] = validate_symmetry(g, perm)
    if not ok:
        raise InvalidSymmetry("permutation is not a leaf-preserving automorphism")


def alice_move_classes(s: GameState, syms: Sequence[Sequence[int]] = ()) -> list[tuple[Move, int]]:
    """Partition the legal moves into symmetry classes.

    Moves are merged when related by a leaf-twin swap, by a palette
    permutation fixing every color currently in use, or by a listed graph
    automorphism that preserves the current coloring.  Returns
    ``(representative, class size)`` pairs; representatives are the smallest
    member of each class.
    """
    g = s.graph
    moves = legal_moves(s)
    index = {m: i for i, m in enumerate(moves)}
    parent = list(range(len(moves)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    used = set(s.colors) - {0}
    unused = [c for c in range(1, s.k + 1) if c not in used]
    twin_first: dict[tuple[int, int], int] = {}
    for i, (v, c) in enumerate(moves):
        if c in unused and c != unused[0]:
            union(i, index[Move(v, unused[0])])
        p = g.roles[v]
        if p >= 0:
            j = twin_first.setdefault((p, c), i)
            if j != i:
                union(i, j)
    for perm in syms:
        perm = tuple(perm)
        _check_symmetry(g, perm)
        if any(s.colors[perm[v]] != s.colors[v] for v in range(g.n)):
            continue
        for i, (v, c) in enumerate(moves):
            union(i, index[Move(perm[v], c)])
    groups: dict[int, list[int]] = {}
    for i in range(len(moves)):
        groups.setdefault(find(i), []).append(i)
    return [(moves[r], len(members)) for r, members in sorted(groups.items())]
