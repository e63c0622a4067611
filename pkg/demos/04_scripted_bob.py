"""Watch the scripted Bob beat random Alices on larger cactuses.

Plays random games on the theorem graphs with cycle length 3, 5 and 7,
with Alice preferring internal vertices, and reports how each game ended.
Bob only ever colors leaves.

    python demos/04_scripted_bob.py [games]
"""
import random
import sys
from collections import Counter

from colorgame.bob import StrategyMemory, next_move
from colorgame.constructions import build_theorem_graph
from colorgame.engine import GameState, apply_move, legal_moves, status


def play(g, rng):
    s = GameState.initial(g, 4)
    mem = StrategyMemory()
    plies = 0
    while True:
        moves = legal_moves(s)
        inner = [m for m in moves if not g.is_leaf(m.vertex)]
        m = rng.choice(inner if inner and rng.random() < 0.8 else moves)
        s = apply_move(s, m)
        plies += 1
        if not status(s).ongoing:
            return status(s), plies
        reply, mem = next_move(mem, s, m)
        s = apply_move(s, reply)
        plies += 1
        if not status(s).ongoing:
            return status(s), plies


def main() -> None:
    games = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    rng = random.Random(1)
    for params in ((3, 1, 8), (5, 2, 8), (7, 3, 8)):
        g = build_theorem_graph(*params)
        results = Counter()
        lengths = []
        for _ in range(games):
            st, plies = play(g, rng)
            results[st.kind] += 1
            lengths.append(plies)
        print(f"cycle {params[0]}, path {params[1]} ({g.n} vertices): {dict(results)}, "
              f"game length {min(lengths)}..{max(lengths)} plies")


if __name__ == "__main__":
    main()
