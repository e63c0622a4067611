"""Who wins the coloring game on small graphs, and with how many colors?

Solves a handful of familiar graphs exactly, prints the game chromatic
number next to the ordinary chromatic number, and shows how much the
solver's state reduction saves compared with brute force.

    python demos/01_small_games.py
"""
import time

from colorgame.constructions import build_thin4_forest
from colorgame.graph import Graph
from colorgame.solver import game_chromatic_number, oracle_solve, solve_exact

GRAPHS = {
    "path P4": Graph.path(4),
    "cycle C5": Graph.cycle(5),
    "star K1,5": Graph.star(5),
    "complete K4": Graph.complete(4),
    "thin 4-cycle forest": build_thin4_forest([(0, 1), (1, 2), (2, 3)], [(0, 1), (2, 3)]),
}


def main() -> None:
    print(f"{'graph':22} {'n':>3} {'chi_g':>6}   winner for k = 1..4")
    for name, g in GRAPHS.items():
        winners = [solve_exact(g, k)[0].winner[0] for k in range(1, 5)]
        print(f"{name:22} {g.n:>3} {game_chromatic_number(g, 6):>6}   {' '.join(winners)}")

    # the reduction drops colored vertices and all-safe regions from the state
    g = build_thin4_forest([(0, 1), (1, 2), (2, 3), (3, 4)], [(0, 1), (1, 2), (3, 4)])
    t = time.time()
    verdict, stats = solve_exact(g, 3)
    t_exact = time.time() - t
    t = time.time()
    oracle = oracle_solve(g, 3)
    t_oracle = time.time() - t
    print(f"\n{g.n}-vertex thin 4-cycle forest, k=3: solver says {verdict.winner} "
          f"({stats.expanded} positions, {t_exact:.2f}s); brute force says {oracle.winner} ({t_oracle:.2f}s)")


if __name__ == "__main__":
    main()
