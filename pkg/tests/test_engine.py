import random

import pytest
from hypothesis import given, settings, strategies as st

from colorgame.engine import (ALICE, BOB, GameState, Move, alice_move_classes, apply_move,
                              canonical_key, forbidden_colors, is_legal, legal_moves, status)
from colorgame.errors import IllegalMove, InvalidSymmetry
from colorgame.graph import Graph, attach_leaves


def star(m: int) -> Graph:
    return attach_leaves(Graph.from_edges(1, []), 0, m)


def random_playout(s: GameState, rng: random.Random, steps: int) -> GameState:
    for _ in range(steps):
        if not status(s).ongoing:
            break
        s = apply_move(s, rng.choice(legal_moves(s)))
    return s


def test_forbidden_colors():
    g = star(4)
    s = GameState.initial(g, 4)
    assert forbidden_colors(s, 0) == frozenset()
    s = GameState.initial(g, 4, [0, 1, 2, 3, 4])
    assert forbidden_colors(s, 0) == {1, 2, 3, 4}
    p = Graph.path(3)
    assert forbidden_colors(GameState.initial(p, 4, [1, 0, 1]), 1) == {1}


def test_legal_moves():
    assert len(legal_moves(GameState.initial(Graph.cycle(3), 4))) == 12
    s = GameState.initial(star(3), 4, [0, 1, 2, 3])
    assert legal_moves(s) == [Move(0, 4)]


def test_apply_move():
    s = GameState.initial(Graph.path(3), 3)
    s1 = apply_move(s, Move(1, 2))
    assert s1.colors[1] == 2 and s.colors[1] == 0
    assert (s.to_move, s1.to_move, apply_move(s1, Move(0, 1)).to_move) == (ALICE, BOB, ALICE)
    assert s1.move_log == (Move(1, 2),)
    with pytest.raises(IllegalMove):
        apply_move(s1, Move(0, 2))
    with pytest.raises(IllegalMove):
        apply_move(s1, Move(1, 3))
    assert not is_legal(s1, Move(0, 2))


def test_status():
    g = Graph.path(2)
    assert status(GameState.initial(g, 2, [1, 2])).kind == "alice"
    st_ = status(GameState.initial(star(4), 4, [0, 1, 2, 3, 4]))
    assert st_.kind == "bob" and st_.vertex == 0
    assert status(GameState.initial(g, 2)).kind == "ongoing"


def test_status_lowest_surrounded_vertex():
    g = Graph.from_edges(4, [(0, 2), (1, 3)])
    s = GameState.initial(g, 1, [0, 0, 1, 1])
    assert status(s).vertex == 0


def test_canonical_key_examples():
    g = star(3)
    a = apply_move(GameState.initial(g, 4), Move(1, 1))
    b = apply_move(GameState.initial(g, 4), Move(2, 1))
    assert canonical_key(a) == canonical_key(b)
    c = apply_move(GameState.initial(g, 4), Move(1, 2))
    assert canonical_key(a) == canonical_key(c)
    assert canonical_key(GameState.initial(g, 4)) != canonical_key(GameState.initial(g, 4, to_move=BOB))


def test_alice_move_classes_star():
    m, k = 5, 4
    s = GameState.initial(star(m), k)
    classes = alice_move_classes(s)
    assert sorted(size for _, size in classes) == [k, m * k]
    assert sum(size for _, size in classes) == len(legal_moves(s))


def test_alice_move_classes_rejects_bad_symmetry():
    s = GameState.initial(Graph.path(3), 2)
    with pytest.raises(InvalidSymmetry):
        alice_move_classes(s, [(1, 0, 2)])


def test_alice_move_classes_singletons_without_symmetry():
    g = Graph.path(3)
    s = GameState.initial(g, 2, [1, 0, 2])
    assert alice_move_classes(s) == [(Move(1, m.color), 1) for m in legal_moves(s)]


def _class_members(s, syms):
    """Brute-force orbit check: every move is equivalent to its representative."""
    classes = alice_move_classes(s, syms)
    assert sum(size for _, size in classes) == len(legal_moves(s))
    reps = {rep for rep, _ in classes}
    assert reps <= set(legal_moves(s))
    return classes


@st.composite
def small_states(draw):
    n = draw(st.integers(1, 8))
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if draw(st.booleans())}
    g = Graph.from_edges(n, sorted(edges)).with_leaf_roles()
    k = draw(st.integers(1, 4))
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    s = random_playout(GameState.initial(g, k), rng, draw(st.integers(0, n)))
    return s


@settings(max_examples=150, deadline=None)
@given(small_states())
def test_move_classes_partition(s):
    if status(s).ongoing:
        syms = [(1, 0) + tuple(range(2, s.graph.n))] if s.graph.n >= 2 else []
        from colorgame.graph import validate_symmetry
        syms = [p for p in syms if validate_symmetry(s.graph, p)]
        _class_members(s, syms)


@settings(max_examples=150, deadline=None)
@given(small_states(), st.integers(0, 10 ** 6))
def test_playouts_stay_proper_and_monotone(s, seed):
    rng = random.Random(seed)
    g = s.graph
    while legal_moves(s):
        before = status(s)
        s = apply_move(s, rng.choice(legal_moves(s)))
        for u, v in g.edges():
            assert not (s.colors[u] and s.colors[u] == s.colors[v])
        if before.kind == "bob":
            # a surrounded vertex stays surrounded whatever is played afterwards
            assert status(s).kind == "bob" and s.colors[before.vertex] == 0
    assert status(s).kind != "ongoing"


def test_surround_is_permanent():
    g = star(2)
    s = GameState.initial(g, 2, [0, 1, 2])
    assert status(s).kind == "bob"
    assert legal_moves(s) == []
