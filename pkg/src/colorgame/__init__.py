"""The graph coloring game: exact solving, Bob strategies and certificates.

Two players alternately color the vertices of a graph with ``k`` colors,
never giving adjacent vertices the same color.  Alice moves first and wins
when every vertex is colored; Bob wins as soon as some uncolored vertex
sees all ``k`` colors among its neighbors.
"""
from .engine import ALICE, BOB, GameState, Move, Status, Verdict, apply_move, canonical_key, is_legal, legal_moves, status
from .errors import (BadConfiguration, BadCycle, BadPath, BudgetExceeded, ColorGameError, IllegalMove,
                     InvalidParameter, InvalidSymmetry, LimitExceeded, NotACactus, NotAForest, PolicyLoss,
                     SchemaError, StrategyBreakdown)
from .graph import INTERNAL, Graph, GraphBuilder, cycle_distance, girth, is_cactus
from .solver import (Certificate, certify_bob_win, game_chromatic_number, oracle_solve, solve_exact,
                     verify_certificate)

__version__ = "1.0.0"

__all__ = [
    "ALICE", "BOB", "GameState", "Move", "Status", "Verdict", "apply_move", "canonical_key", "is_legal",
    "legal_moves", "status", "Graph", "GraphBuilder", "INTERNAL", "cycle_distance", "girth", "is_cactus",
    "Certificate", "certify_bob_win", "game_chromatic_number", "oracle_solve", "solve_exact",
    "verify_certificate", "BadConfiguration", "BadCycle", "BadPath", "BudgetExceeded", "ColorGameError",
    "IllegalMove", "InvalidParameter", "InvalidSymmetry", "LimitExceeded", "NotACactus", "NotAForest",
    "PolicyLoss", "SchemaError", "StrategyBreakdown",
]
