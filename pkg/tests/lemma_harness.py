"""Exhaustive-Alice checks for the lemma strategies.

Configurations are small standalone graphs: the path and/or odd cycle, each
vertex with ``leaves`` uncolored leaves, plus precolored marker leaves that
realize the prescribed forbidden sets, plus a few isolated spare vertices
so Alice can also spend a tempo away from the configuration.
"""
from __future__ import annotations

import itertools

from colorgame.engine import GameState, apply_move, is_legal, legal_moves, status
from colorgame.errors import StrategyBreakdown
from colorgame.graph import GraphBuilder
from colorgame.lemmas import (CYCLE, CYCLE_PATH, PATH, LemmaPosition, check_winning_cycle,
                              check_winning_cycle_path, check_winning_path, lemma_play,
                              make_cycle_path_position, make_cycle_position, path_pair)
from colorgame.position import Position

K = 4
LEAVES = 4


def build_config(d: int | None, cycle_len: int | None, phis: dict[int, set[int]],
                 leaves: int | None = None, spare: int = 2, k: int = K):
    """Path ``0..d`` (if ``d`` is not None) then a cycle sharing the path's last vertex.

    Returns ``(state, path, cycle)`` with global vertex ids.
    """
    if leaves is None:
        leaves = LEAVES
    b = GraphBuilder()
    path: list[int] = []
    cycle: list[int] = []
    if d is not None:
        path = [b.add_vertex() for _ in range(d + 1)]
        for u, v in zip(path, path[1:]):
            b.add_edge(u, v)
    if cycle_len:
        start = [path[-1]] if path else []
        cycle = start + [b.add_vertex() for _ in range(cycle_len - len(start))]
        for t in range(cycle_len):
            b.add_edge(cycle[t], cycle[(t + 1) % cycle_len])
    internal = list(dict.fromkeys(path + cycle))
    marked = []
    for v in internal:
        b.attach_leaves(v, leaves)
    for v in internal:
        for c in sorted(phis.get(v, ())):
            marked.append((b.attach_leaves(v, 1)[0], c))
    for _ in range(spare):
        b.add_vertex()
    g = b.build()
    colors = [0] * g.n
    for leaf, c in marked:
        colors[leaf] = c
    return GameState.initial(g, k, colors), path, cycle


def _key(s: GameState) -> tuple:
    g = s.graph
    summary = {}
    inner = []
    for v in range(g.n):
        p = g.roles[v]
        if p < 0:
            inner.append(s.colors[v])
        else:
            e = summary.setdefault(p, [0, 0])
            if s.colors[v]:
                e[0] |= 1 << (s.colors[v] - 1)
            else:
                e[1] += 1
    return tuple(inner), tuple((p, m, f) for p, (m, f) in sorted(summary.items()))


class Failure(Exception):
    def __init__(self, line, why="Alice colors everything"):
        super().__init__(f"{why} along {line}")
        self.line = line
        self.why = why


def beats_every_alice(s: GameState, lp: LemmaPosition, exact: bool = False, **options) -> int:
    """Play the lemma strategy against every Alice move; returns states visited.

    Transpositions are merged on the exact coloring when ``exact`` is set and
    otherwise up to swapping twin leaves. Raises :class:`Failure` with the offending move sequence if Alice wins,
    and lets :class:`StrategyBreakdown` or illegal replies propagate.
    """
    memo: set = set()

    def go(s, lp, line):
        st = status(s)
        if st.kind == "bob":
            return
        if st.kind == "alice":
            raise Failure(line)
        key = (s.colors if exact else _key(s), lp.tag())
        if key in memo:
            return
        for m in legal_moves(s):
            s2 = apply_move(s, m)
            st2 = status(s2)
            if st2.kind == "bob":
                continue
            if st2.kind == "alice":
                raise Failure(line + [m])
            try:
                reply, lp2 = lemma_play(s2, lp, m, **options)
            except StrategyBreakdown as e:
                raise Failure(line + [m], f"breakdown ({e})") from None
            if not is_legal(s2, reply):
                raise StrategyBreakdown(f"bad reply {reply} after {line + [m]}")
            go(apply_move(s2, reply), lp2, line + [m, reply])
        memo.add(key)

    go(s, lp, [])
    return len(memo)


def _subsets(k: int = K, max_size: int = 3):
    cols = range(1, k + 1)
    return [set(c) for r in range(max_size + 1) for c in itertools.combinations(cols, r)]


FILL_PAIRS = [{1, 3}, {2, 4}, {1, 4}, {2, 3}, {3, 4}, {1, 2}]


def _fill(verts, fixed, shift):
    """Give every vertex without a prescribed set one of the color pairs.

    With few leaves the vertices Bob may have to surround need a head start
    (see :func:`colorgame.lemmas.leaf_need`); rotating through all pairs
    exercises every parity relation with the prescribed ends.
    """
    phis = dict(fixed)
    for j, v in enumerate(verts):
        if v not in phis:
            phis[v] = FILL_PAIRS[(j + shift) % len(FILL_PAIRS)]
    return phis


def _fills(leaves):
    # with enough leaves the bare configuration is in scope as well
    return [None, 0, 3] if leaves >= 7 else [0, 3]


def path_configs(d_max: int = 5, leaves: int | None = None):
    """Every accepted (d, Phi(v_0), Phi(v_d), fill) up to palette renaming.

    The first end always holds ``{1, 2}`` or ``{1, 2, 3}``; for ``d = 0`` the
    single vertex is given every set of at least two colors.
    """
    leaves = LEAVES if leaves is None else leaves
    for d in range(d_max + 1):
        for p0 in ({1, 2}, {1, 2, 3}):
            for pd in ([None] if d == 0 else _subsets()):
                base = {0: p0} if d == 0 else {0: p0, d: pd}
                for shift in ([None] if d < 2 else _fills(leaves)):
                    phis = base if shift is None else _fill(range(d + 1), base, shift)
                    s, path, _ = build_config(d, None, phis, leaves)
                    if check_winning_path(s, path) is not None:
                        yield s, path, phis


def cycle_configs(lengths=(3, 5), leaves: int | None = None):
    leaves = LEAVES if leaves is None else leaves
    for n in lengths:
        for pu in ({1, 2}, {1, 2, 3}):
            for pv in _subsets():
                base = {0: pu, 1: pv}
                for shift in _fills(leaves):
                    phis = base if shift is None else _fill(range(n), base, shift)
                    s, _, cyc = build_config(None, n, phis, leaves)
                    if check_winning_cycle(s, cyc) is not None:
                        yield s, cyc, phis


def cycle_path_configs(d_max: int = 5, lengths=(3, 5), leaves: int | None = None):
    leaves = LEAVES if leaves is None else leaves
    for n in lengths:
        for d in range(1, d_max + 1):
            w = d + 1
            for p0 in ({1, 2}, {1, 2, 3}):
                for pw in _subsets(max_size=2):
                    base = {0: p0, w: pw}
                    for shift in _fills(leaves):
                        phis = base if shift is None else _fill(range(d + n), base, shift)
                        s, path, cyc = build_config(d, n, phis, leaves)
                        assert cyc[1] == w
                        if check_winning_cycle_path(s, path, cyc) is not None:
                            yield s, path, cyc, phis


def lemma_position_for(s: GameState, path, cycle) -> LemmaPosition:
    """Global-id lemma position recognized on ``s``."""
    pos = Position.from_state(s)
    idx = {v: i for i, v in enumerate(pos.labels)}
    lp_path = [idx[v] for v in path]
    lp_cyc = [idx[v] for v in cycle]
    if path and not cycle:
        lp = LemmaPosition(PATH, tuple(lp_path), (), path_pair(pos, lp_path))
    elif not path:
        lp = make_cycle_position(pos, lp_cyc)
    else:
        lp = make_cycle_path_position(pos, lp_path, lp_cyc)
    lab = pos.labels
    return LemmaPosition(lp.kind, tuple(lab[i] for i in lp.path), tuple(lab[i] for i in lp.cycle),
                         lp.pair, lp.shared)


__all__ = ["build_config", "beats_every_alice", "Failure", "path_configs", "cycle_configs",
           "cycle_path_configs", "lemma_position_for", "CYCLE", "CYCLE_PATH", "PATH"]
