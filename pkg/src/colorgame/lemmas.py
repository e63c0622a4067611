"""Winning positions for Bob and the strategies that convert them into wins.

Three families are recognized, each at Alice's turn:

* winning path ``v_0..v_d`` with a color pair ``A`` inside ``Phi(v_0)``:
  for odd ``d`` the far end also sees all of ``A``, for even ``d`` it sees
  the complementary pair;
* winning (odd) cycle with adjacent ``u, v`` such that ``|Phi(u)| >= 2``
  and ``Phi(u)`` meets ``Phi(v)``;
* winning cycle-path: a path ``v_0..v_d`` ending on an odd cycle, with the
  cycle neighbor ``w`` of ``v_d`` seeing a color of ``A`` (even ``d``) or
  of its complement (odd ``d``).

Everything here works on :class:`~colorgame.position.Position` local
indices.  The public ``check_*``/``lemma_play`` entry points also accept a
:class:`~colorgame.engine.GameState` with global vertex ids.  Colors sets
are bitmasks internally.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from .engine import GameState, Move, full_mask, mask_to_set, set_to_mask
from .errors import BadConfiguration, BadCycle, BadPath, StrategyBreakdown
from .position import LEAF, PASS, VERTEX, Position

PATH, CYCLE, CYCLE_PATH = "path", "cycle", "cyclepath"


def _pop(m: int) -> int:
    return bin(m).count("1")


def _colors(m: int) -> list[int]:
    return [c + 1 for c in range(m.bit_length()) if m >> c & 1]


def _low(m: int) -> int:
    return (m & -m).bit_length()


def pairs_in(mask: int) -> list[int]:
    cs = _colors(mask)
    return [(1 << (a - 1)) | (1 << (b - 1)) for i, a in enumerate(cs) for b in cs[i + 1:]]


@dataclass(frozen=True)
class LemmaPosition:
    """A recognized winning configuration (local vertex indices).

    ``cycle`` is in cyclic order.  For a cycle-path it starts at the path
    end followed by ``w``; for a winning cycle it starts at ``u`` followed
    by ``v``, and ``shared`` is the color both see.
    """

    kind: str
    path: tuple[int, ...]
    cycle: tuple[int, ...]
    pair: int
    shared: int = 0

    @property
    def d(self) -> int:
        return len(self.path) - 1

    @property
    def w(self) -> int:
        return self.cycle[1]

    def vertices(self) -> set[int]:
        return set(self.path) | set(self.cycle)

    def relabel_colors(self, perm) -> "LemmaPosition":
        pair = 0
        for c in _colors(self.pair):
            pair |= 1 << (perm[c] - 1)
        return replace(self, pair=pair, shared=perm[self.shared] if self.shared else 0)

    def to_json(self, labels=None) -> dict:
        lab = (lambda i: labels[i]) if labels is not None else (lambda i: i)
        d = {"kind": self.kind, "path": [lab(i) for i in self.path],
             "cycle": [lab(i) for i in self.cycle], "pair": _colors(self.pair)}
        if self.shared:
            d["shared"] = self.shared
        return d

    def tag(self) -> tuple:
        return (self.kind, self.path, self.cycle, self.pair, self.shared)


# -- validation ------------------------------------------------------------

def _check_vertices(pos: Position, verts, err):
    for i in verts:
        if not 0 <= i < pos.n_core:
            raise err(f"vertex {i} is not an internal vertex of the region")
        if pos.colors[i]:
            raise err(f"vertex {i} is colored")


def _check_path_shape(pos: Position, path, err):
    if not path:
        raise err("empty path")
    if len(set(path)) != len(path):
        raise err("path repeats a vertex")
    _check_vertices(pos, path, err)
    adj = pos.struct.adj
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise err(f"{a} and {b} are not adjacent")


def _check_cycle_shape(pos: Position, cycle, err):
    if len(cycle) < 3 or len(cycle) % 2 == 0:
        raise err("cycle must be odd with at least 3 vertices")
    if len(set(cycle)) != len(cycle):
        raise err("cycle repeats a vertex")
    _check_vertices(pos, cycle, err)
    adj = pos.struct.adj
    for t in range(len(cycle)):
        if cycle[(t + 1) % len(cycle)] not in adj[cycle[t]]:
            raise err("consecutive cycle vertices are not adjacent")


def path_pair(pos: Position, path) -> int | None:
    """Pair mask making ``path`` a winning path, or None (no validation)."""
    k = pos.k
    full = full_mask(k)
    d = len(path) - 1
    p0, pd = pos.phi[path[0]], pos.phi[path[-1]]
    for pair in pairs_in(p0):
        need = pair if d % 2 else full ^ pair
        if need & pd == need:
            return pair
    return None


def cycle_anchor(pos: Position, cycle, strict: bool = False):
    """``(u, v, shared color)`` for a winning cycle, or None (no validation)."""
    n = len(cycle)
    phi = pos.phi
    for t in range(n):
        u = cycle[t]
        if _pop(phi[u]) < 2:
            continue
        for v in (cycle[(t + 1) % n], cycle[t - 1]):
            common = phi[u] & phi[v]
            if common and (not strict or _pop(common) == 1):
                return u, v, _low(common)
    return None


def cycle_path_pair(pos: Position, path, w: int) -> int | None:
    full = full_mask(pos.k)
    d = len(path) - 1
    pw = pos.phi[w]
    for pair in pairs_in(pos.phi[path[0]]):
        need = pair if d % 2 == 0 else full ^ pair
        if pw & need:
            return pair
    return None


def _rotate_cycle(cycle, start: int, nxt: int) -> tuple[int, ...]:
    n = len(cycle)
    t = cycle.index(start)
    if cycle[(t + 1) % n] == nxt:
        return tuple(cycle[(t + s) % n] for s in range(n))
    return tuple(cycle[(t - s) % n] for s in range(n))


def make_cycle_position(pos: Position, cycle, strict: bool = False) -> LemmaPosition | None:
    found = cycle_anchor(pos, cycle, strict)
    if found is None:
        return None
    u, v, a = found
    b = _low(pos.phi[u] & ~(1 << (a - 1)))
    return LemmaPosition(CYCLE, (), _rotate_cycle(cycle, u, v), (1 << (a - 1)) | (1 << (b - 1)), a)


def make_cycle_path_position(pos: Position, path, cycle) -> LemmaPosition | None:
    vd = path[-1]
    n = len(cycle)
    t = list(cycle).index(vd)
    for w in (cycle[(t + 1) % n], cycle[t - 1]):
        pair = cycle_path_pair(pos, path, w)
        if pair is not None:
            if len(path) == 1:
                a = _low(pos.phi[w] & pair)
                b = _low(pair & ~(1 << (a - 1)))
                return LemmaPosition(CYCLE, (), _rotate_cycle(cycle, vd, w), pair, a)
            return LemmaPosition(CYCLE_PATH, tuple(path), _rotate_cycle(cycle, vd, w), pair)
    return None


def leaf_need(pos: Position, i: int) -> int:
    """Free leaves ``i`` must keep so Bob can surround it despite leaf attacks.

    Each missing color costs Bob one leaf, and every Alice attack on an
    ``i``-leaf is answered on another ``i``-leaf, which removes a missing
    color for two leaves.  Hence ``2 * missing - 1``.
    """
    missing = pos.k - _pop(pos.phi[i])
    return max(0, 2 * missing - 1)


def leaves_suffice(pos: Position, verts) -> bool:
    return all(pos.lfree[i] >= leaf_need(pos, i) for i in verts)


def still_winning(pos: Position, lp: LemmaPosition) -> bool:
    """Does ``lp`` still describe a winning configuration of ``pos``?"""
    verts = lp.vertices()
    if any(pos.colors[i] for i in verts):
        return False
    phi = pos.phi
    full = full_mask(pos.k)
    if lp.kind == PATH:
        if lp.pair & phi[lp.path[0]] != lp.pair:
            return False
        need = lp.pair if lp.d % 2 else full ^ lp.pair
        return phi[lp.path[-1]] & need == need
    if lp.kind == CYCLE:
        u, v = lp.cycle[0], lp.cycle[1]
        bit = 1 << (lp.shared - 1)
        return _pop(phi[u]) >= 2 and phi[u] & bit and phi[v] & bit
    if lp.pair & phi[lp.path[0]] != lp.pair:
        return False
    need = lp.pair if lp.d % 2 == 0 else full ^ lp.pair
    return bool(phi[lp.w] & need)


# -- public recognizers ----------------------------------------------------

def _as_position(s):
    if isinstance(s, Position):
        return s, (lambda v: v), (lambda i: i)
    pos = Position.from_state(s)
    index = {v: i for i, v in enumerate(pos.labels)}

    def to_local(v):
        if v not in index:
            raise BadConfiguration(f"vertex {v} is not an internal vertex")
        return index[v]

    return pos, to_local, (lambda i: pos.labels[i])


def check_winning_path(s, path) -> frozenset[int] | None:
    """Color pair making ``path`` a winning path, or None."""
    pos, loc, _ = _as_position(s)
    try:
        p = [loc(v) for v in path]
    except BadConfiguration as e:
        raise BadPath(str(e)) from None
    _check_path_shape(pos, p, BadPath)
    if not leaves_suffice(pos, p):
        return None
    pair = path_pair(pos, p)
    return None if pair is None else mask_to_set(pair)


def check_winning_cycle(s, cycle, strict: bool = False):
    """``(u, v, shared color)`` if ``cycle`` is a winning cycle, else None.

    The default accepts any shared color; ``strict=True`` demands exactly
    one, the literal form of the classical statement.
    """
    pos, loc, glob = _as_position(s)
    try:
        c = [loc(v) for v in cycle]
    except BadConfiguration as e:
        raise BadCycle(str(e)) from None
    _check_cycle_shape(pos, c, BadCycle)
    if not leaves_suffice(pos, c):
        return None
    found = cycle_anchor(pos, c, strict)
    if found is None:
        return None
    u, v, a = found
    return glob(u), glob(v), a


def check_winning_cycle_path(s, path, cycle) -> frozenset[int] | None:
    pos, loc, _ = _as_position(s)
    p = [loc(v) for v in path]
    c = [loc(v) for v in cycle]
    _check_path_shape(pos, p, BadConfiguration)
    _check_cycle_shape(pos, c, BadConfiguration)
    if p[-1] not in c or set(p[:-1]) & set(c):
        raise BadConfiguration("path must meet the cycle exactly at its last vertex")
    if not leaves_suffice(pos, set(p) | set(c)):
        return None
    t = c.index(p[-1])
    for w in (c[(t + 1) % len(c)], c[t - 1]):
        pair = cycle_path_pair(pos, p, w)
        if pair is not None:
            return mask_to_set(pair)
    return None


# -- Bob's moves -----------------------------------------------------------

def immediate_win(pos: Position, vertex_moves: bool = False):
    """A move surrounding some core vertex right now, if any.

    Leaf moves come first.  With ``vertex_moves`` Bob may also color an
    uncolored core neighbor with the one color still missing around a
    vertex whose own leaves are gone.
    """
    full = full_mask(pos.k)
    k1 = pos.k - 1
    for i in range(pos.n_core):
        if not pos.colors[i] and pos.lfree[i] and _pop(pos.phi[i]) == k1:
            return (LEAF, i, _low(full ^ pos.phi[i]))
    if vertex_moves:
        n_core = pos.n_core
        for i in range(n_core):
            if not pos.colors[i] and _pop(pos.phi[i]) == k1:
                c = _low(full ^ pos.phi[i])
                for j in pos.struct.adj[i]:
                    if j < n_core and not pos.colors[j] and not pos.phi[j] >> (c - 1) & 1:
                        return (VERTEX, j, c)
    return None


def _leaf_move(pos: Position, i: int, c: int, why: str):
    if pos.colors[i] or pos.lfree[i] < 1:
        raise StrategyBreakdown(f"{why}: vertex {i} has no usable leaf")
    return (LEAF, i, c)


def _reverse_path(lp: LemmaPosition, k: int) -> LemmaPosition:
    pair = lp.pair if lp.d % 2 else full_mask(k) ^ lp.pair
    return replace(lp, path=lp.path[::-1], pair=pair)


def advance(pos: Position, lp: LemmaPosition):
    """Bob's move when Alice left the configuration alone."""
    full = full_mask(pos.k)
    phi = pos.phi
    if lp.kind == PATH:
        ends = [lp.path[0]] if lp.d == 0 else [lp.path[0], lp.path[-1]]
        ends = [e for e in ends if pos.lfree[e] and phi[e] != full]
        if not ends:
            raise StrategyBreakdown("no endpoint of the winning path has a free leaf")
        e = max(ends, key=lambda i: (_pop(phi[i]), pos.lfree[i]))
        return (LEAF, e, _low(full ^ phi[e])), lp
    if lp.kind == CYCLE:
        u, v = lp.cycle[0], lp.cycle[1]
        b = _low(lp.pair & ~(1 << (lp.shared - 1)))
        new = LemmaPosition(PATH, (u, v), (), lp.pair)
        if phi[v] >> (b - 1) & 1:
            return advance(pos, new)
        return _leaf_move(pos, v, b, "winning cycle"), new
    need = lp.pair if lp.d % 2 == 0 else full ^ lp.pair
    new = LemmaPosition(PATH, lp.path + (lp.w,), (), lp.pair)
    missing = need & ~phi[lp.w]
    if not missing:
        return advance(pos, new)
    return _leaf_move(pos, lp.w, _low(missing), "cycle-path extension"), new


def _establish(pos: Position, e: int, c: int, new: LemmaPosition, why: str):
    """Color a leaf of ``e`` with ``c``; if ``e`` already sees ``c``, press on instead."""
    if pos.phi[e] >> (c - 1) & 1:
        return advance(pos, new)
    return _leaf_move(pos, e, c, why), new


def _path_reply(pos, lp, v, col):
    k = pos.k
    full = full_mask(k)
    A = lp.pair
    path = lp.path
    d = lp.d
    i = path.index(v)
    if i == d and d > 0:
        lp = _reverse_path(lp, k)
        path, A = lp.path, lp.pair
        i = 0
    cbit = 1 << (col - 1)
    if i == 0:
        X = full ^ A
        new = LemmaPosition(PATH, path[1:], (), X)
        return _establish(pos, path[1], _low(X & ~cbit), new, "path end colored")
    X = A if A & cbit else full ^ A
    other = _low(X & ~cbit)
    d1 = i - 1
    if (d1 % 2 == 1) == (X == A):
        return _establish(pos, path[i - 1], other, LemmaPosition(PATH, path[:i], (), A), "path split, near side")
    d2 = d - i - 1
    b_end = A if d % 2 else full ^ A
    if (d2 % 2 == 1) == (X == b_end):
        rev = tuple(reversed(path[i + 1:]))
        return _establish(pos, path[i + 1], other, LemmaPosition(PATH, rev, (), b_end), "path split, far side")
    raise StrategyBreakdown("no side of the split path is winning")


def _cycle_reply(pos, lp, i, col):
    cyc = lp.cycle
    a = lp.shared
    b = _low(lp.pair & ~(1 << (a - 1)))
    cbit = 1 << (col - 1)
    if i == cyc[0]:
        new = LemmaPosition(PATH, cyc[1:], (), (1 << (a - 1)) | cbit)
        return _establish(pos, cyc[-1], a, new, "cycle anchor u colored")
    if i == cyc[1]:
        x = a if col != a else b
        new = LemmaPosition(PATH, cyc[2:] + (cyc[0],), (), (1 << (x - 1)) | cbit)
        return _establish(pos, cyc[2], x, new, "cycle anchor v colored")
    return advance(pos, lp)


def _cycle_path_reply(pos, lp, i, col):
    full = full_mask(pos.k)
    A = lp.pair
    path, cyc = lp.path, lp.cycle
    d = lp.d
    cbit = 1 << (col - 1)
    X = A if A & cbit else full ^ A
    other = _low(X & ~cbit)
    if i == lp.w:
        around = path + tuple(reversed(cyc[2:]))
        if (d % 2 == 1) == (X == A):
            return _establish(pos, path[-1], other, LemmaPosition(PATH, path, (), A), "w colored, short side")
        return _establish(pos, around[-1], other, LemmaPosition(PATH, around, (), A), "w colored, long side")
    if i == path[0]:
        rest = path[1:]
        if len(rest) == 1:
            new = LemmaPosition(CYCLE, (), cyc, X, 0)
            pw = pos.phi[cyc[1]] & X
            if not pw:
                raise StrategyBreakdown("cycle anchor lost its shared color")
            new = replace(new, shared=_low(pw))
        else:
            new = LemmaPosition(CYCLE_PATH, rest, cyc, X)
        return _establish(pos, rest[0], other, new, "cycle-path start colored")
    if i == path[-1]:
        w, w2 = cyc[1], cyc[-1]
        rest = pos.phi[w] & ~cbit
        if rest:
            c = _low(rest)
            new = LemmaPosition(PATH, cyc[1:], (), cbit | (1 << (c - 1)))
            return _establish(pos, w2, c, new, "cycle entry colored")
        Y = A if d % 2 == 0 else full ^ A
        if not Y & cbit:
            raise StrategyBreakdown("cycle entry colored outside the expected class")
        new = LemmaPosition(PATH, path[:-1], (), A)
        return _establish(pos, path[-2], _low(Y & ~cbit), new, "cycle entry colored, fall back")
    if i in path:
        t = path.index(i)
        d1 = t - 1
        if (d1 % 2 == 1) == (X == A):
            return _establish(pos, path[t - 1], other, LemmaPosition(PATH, path[:t], (), A), "cycle-path split, path side")
        rest = path[t + 1:]
        if len(rest) == 1:
            pw = pos.phi[cyc[1]] & X
            if not pw:
                raise StrategyBreakdown("cycle anchor lost its shared color")
            new = LemmaPosition(CYCLE, (), cyc, X, _low(pw))
        else:
            new = LemmaPosition(CYCLE_PATH, rest, cyc, X)
        return _establish(pos, rest[0], other, new, "cycle-path split, cycle side")
    return advance(pos, lp)


def leaf_reply(pos: Position, i: int):
    """Answer a leaf of ``i`` colored by Alice with another ``i``-leaf and a new color."""
    full = full_mask(pos.k)
    if i < pos.n_core and not pos.colors[i] and pos.lfree[i] and pos.phi[i] != full:
        return (LEAF, i, _low(full ^ pos.phi[i]))
    return None


def lemma_step(pos: Position, lp: LemmaPosition, alice_move, vertex_moves: bool = False,
               answer_leaves: bool = True):
    """Bob's reply (local move) and the configuration it maintains.

    ``pos`` is the position after Alice's move ``alice_move``.  The reply
    surrounds a vertex outright when possible.  If Alice colored a leaf of
    a configuration vertex, Bob colors another leaf of it with a new color
    (``answer_leaves``).  Otherwise the case analysis for ``lp.kind``
    applies.  Raises :class:`StrategyBreakdown` when no case applies.
    """
    win = immediate_win(pos, vertex_moves)
    if win is not None:
        return win, lp
    kind, i, col = alice_move
    if answer_leaves and kind == LEAF and i in lp.vertices():
        move = leaf_reply(pos, i)
        if move is not None:
            return move, lp
    if kind != VERTEX or i not in lp.vertices():
        move, new = advance(pos, lp)
    elif lp.kind == PATH:
        move, new = _path_reply(pos, lp, i, col)
    elif lp.kind == CYCLE:
        move, new = _cycle_reply(pos, lp, i, col)
    else:
        move, new = _cycle_path_reply(pos, lp, i, col)
    if not pos.is_legal(move):
        raise StrategyBreakdown(f"reply {move} is illegal")
    after = pos.apply(move)
    if after.status()[0] != "bob" and not still_winning(after, new):
        raise StrategyBreakdown(f"reply {move} does not restore a winning {new.kind}")
    return move, new


def lemma_play(s, lp: LemmaPosition, alice_last, **options):
    """Public wrapper of :func:`lemma_step`.

    With a :class:`GameState` the lemma position uses global vertex ids and
    ``alice_last`` is a :class:`Move`; the result is ``(Move, LemmaPosition)``
    in the same terms.
    """
    if isinstance(s, Position):
        return lemma_step(s, lp, alice_last, **options)
    pos, loc, glob = _as_position(s)
    llp = replace(lp, path=tuple(loc(v) for v in lp.path), cycle=tuple(loc(v) for v in lp.cycle))
    mv = pos.from_game_move(s, alice_last)
    move, new = lemma_step(pos, llp, mv, **options)
    gnew = replace(new, path=tuple(glob(i) for i in new.path), cycle=tuple(glob(i) for i in new.cycle))
    return pos.to_game_move(s, move), gnew


# -- corollary -------------------------------------------------------------

def find_cycle_path(pos: Position, sources=None, cycles=None):
    """Shortest uncolored path from a vertex with ``|Phi| >= 2`` into an uncolored odd cycle.

    Returns ``(path, cycle)`` in local indices or None.  ``sources`` and
    ``cycles`` (indices into ``pos.struct.cycles``) restrict the search.
    """
    st = pos.struct
    colors = pos.colors
    eligible = [ci for ci, c in enumerate(st.cycles)
                if len(c) % 2 == 1 and all(colors[v] == 0 for v in c) and (cycles is None or ci in cycles)]
    if not eligible:
        return None
    on = {}
    for ci in eligible:
        for v in st.cycles[ci]:
            on.setdefault(v, ci)
    srcs = sources if sources is not None else range(st.n_core)
    best = None
    for s0 in srcs:
        if colors[s0] or _pop(pos.phi[s0]) < 2:
            continue
        prev = {s0: None}
        q = deque([s0])
        while q:
            u = q.popleft()
            if u in on:
                path = [u]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                path.reverse()
                cand = (len(path), on[u], s0, tuple(path))
                if best is None or cand < best:
                    best = cand
                break
            for w in st.adj[u]:
                if w < st.n_core and w not in prev and not colors[w]:
                    prev[w] = u
                    q.append(w)
    if best is None:
        return None
    _, ci, _, path = best
    return path, st.cycles[ci]


def corollary_setup(pos: Position, sources=None, cycles=None):
    """Bob's one move creating a winning cycle-path; ``(move, LemmaPosition)`` or None."""
    found = find_cycle_path(pos, sources, cycles)
    if found is None:
        return None
    path, cycle = found
    full = full_mask(pos.k)
    vd = path[-1]
    n = len(cycle)
    t = cycle.index(vd)
    pair = pairs_in(pos.phi[path[0]])[0]
    d = len(path) - 1
    need = pair if d % 2 == 0 else full ^ pair
    for w in (cycle[(t + 1) % n], cycle[t - 1]):
        if pos.phi[w] & need:
            lp = make_cycle_path_position(pos, path, cycle)
            return advance(pos, lp)
    for w in (cycle[(t + 1) % n], cycle[t - 1]):
        if pos.lfree[w]:
            move = (LEAF, w, _low(need))
            after = pos.apply(move)
            lp = make_cycle_path_position(after, path, cycle)
            if lp is None:
                raise StrategyBreakdown("corollary move failed to create a winning cycle-path")
            return move, lp
    return None


def corollary_setup_move(s) -> Move | None:
    """Bob's leaf move creating a winning cycle-path in ``s``, if one exists."""
    if isinstance(s, Position):
        res = corollary_setup(s)
        return None if res is None else res[0]
    pos, _, _ = _as_position(s)
    res = corollary_setup(pos)
    return None if res is None else pos.to_game_move(s, res[0])


__all__ = ["LemmaPosition", "check_winning_path", "check_winning_cycle", "check_winning_cycle_path",
           "corollary_setup_move", "corollary_setup", "lemma_play", "lemma_step", "immediate_win",
           "still_winning", "advance", "make_cycle_position", "make_cycle_path_position",
           "set_to_mask", "PASS"]
