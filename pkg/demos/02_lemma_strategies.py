"""Bob's local winning strategies in action.

Builds a path whose ends already see two colors each, checks that it is a
winning path for Bob, then lets Bob's lemma strategy answer a random Alice
until some vertex is surrounded.

    python demos/02_lemma_strategies.py [seed]
"""
import random
import sys

from colorgame.engine import GameState, apply_move, legal_moves, status
from colorgame.graph import GraphBuilder
from colorgame.lemmas import PATH, LemmaPosition, check_winning_path, lemma_play, path_pair
from colorgame.position import Position

K = 4


def build_path(d: int, leaves: int, end_colors: dict[int, set[int]]):
    """Path 0..d, ``leaves`` free leaves per vertex, colored marker leaves for the given Phi sets."""
    b = GraphBuilder()
    path = [b.add_vertex() for _ in range(d + 1)]
    for u, v in zip(path, path[1:]):
        b.add_edge(u, v)
    for v in path:
        b.attach_leaves(v, leaves)
    marked = [(b.attach_leaves(path[i], 1)[0], c) for i, cols in end_colors.items() for c in sorted(cols)]
    b.add_vertex()  # a spare vertex Alice may use to pass
    g = b.build()
    colors = [0] * g.n
    for leaf, c in marked:
        colors[leaf] = c
    return GameState.initial(g, K, colors), path


def main() -> None:
    rng = random.Random(int(sys.argv[1]) if len(sys.argv) > 1 else 0)
    s, path = build_path(3, 4, {0: {1, 2}, 1: {1, 3}, 2: {2, 4}, 3: {1, 2}})
    pair = check_winning_path(s, path)
    print(f"path {path}: Phi = {[sorted(s.forbidden(v)) for v in path]}; winning pair for Bob: {sorted(pair)}")
    pos = Position.from_state(s)
    idx = {v: i for i, v in enumerate(pos.labels)}
    lp_local = [idx[v] for v in path]
    lp = LemmaPosition(PATH, tuple(path), (), path_pair(pos, lp_local))
    for turn in range(1, 40):
        m = rng.choice(legal_moves(s))
        s = apply_move(s, m)
        print(f"{turn:2}. Alice colors {m.vertex} with {m.color}")
        if not status(s).ongoing:
            break
        reply, lp = lemma_play(s, lp, m)
        s = apply_move(s, reply)
        where = "leaf of " + str(s.graph.roles[reply.vertex]) if s.graph.is_leaf(reply.vertex) else "vertex"
        print(f"    Bob colors {reply.vertex} ({where}) with {reply.color}")
        if not status(s).ongoing:
            break
    st = status(s)
    print(f"result: {st.kind} wins" + (f", vertex {st.vertex} is surrounded" if st.kind == "bob" else ""))


if __name__ == "__main__":
    main()
