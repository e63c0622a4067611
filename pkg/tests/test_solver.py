import copy
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from colorgame.constructions import build_theorem_graph, enumerate_small_graphs, random_connected_graph
from colorgame.engine import GameState, Move, apply_move, legal_moves, status
from colorgame.errors import BudgetExceeded, InvalidSymmetry, PolicyLoss
from colorgame.graph import Graph, attach_leaves
from colorgame.position import LEAF, PASS, VERTEX, Position
from colorgame.solver import (Certificate, certify_bob_win, dominates, game_chromatic_number, graph_digest,
                              Reduction, oracle_solve, solve_exact, verify_certificate)


def test_oracle_examples():
    assert oracle_solve(Graph.from_edges(1, []), 1).winner == "Alice"
    assert oracle_solve(Graph.path(2), 1).winner == "Bob"
    assert oracle_solve(Graph.cycle(5), 2).winner == "Bob"


def test_solve_exact_examples():
    p4 = Graph.path(4)
    assert solve_exact(p4, 2)[0].winner == "Bob"
    assert solve_exact(p4, 3)[0].winner == "Alice"
    assert solve_exact(Graph.star(4), 2)[0].winner == "Alice"


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 6), st.integers(2, 4), st.integers(0, 10 ** 6))
def test_reduction_agrees_with_oracle_midgame(n, k, seed):
    rng = random.Random(seed)
    g = random_connected_graph(rng, 2, n)
    for v in range(g.n):
        g = attach_leaves(g, v, rng.randint(0, 1))
    s = GameState.initial(g, k)
    for _ in range(rng.randint(0, g.n // 2)):
        if not status(s).ongoing:
            break
        s = apply_move(s, rng.choice(legal_moves(s)))
    assert solve_exact(g, k, s)[0].winner == oracle_solve(g, k, s).winner


def test_reduction_keys():
    g = attach_leaves(Graph.path(5), 2, 2)
    s = GameState.initial(g, 3, [0, 1, 0, 0, 0, 0, 0])
    red = Reduction(Position.from_state(s))
    # 2 is unsafe and drags its uncolored path neighbors along; 0 is cut off by the colored 1
    assert red.live == [2, 3, 4] and red.tempo_move == (VERTEX, 0, 2)
    swapped = GameState.initial(g, 3, [0, 2, 0, 0, 0, 0, 0])
    assert Reduction(Position.from_state(swapped)).key == red.key
    assert red.color_reps == [1, 2]


def test_solve_exact_stats_and_budget():
    verdict, stats = solve_exact(Graph.cycle(6), 2)
    assert stats.expanded > 0 and stats.hits <= stats.expanded + stats.peak_table
    with pytest.raises(BudgetExceeded):
        solve_exact(Graph.complete(6), 4, budget=3)


def test_solve_from_midgame_state():
    g = Graph.path(3)
    s = GameState.initial(g, 2, [1, 0, 0], to_move="B")
    assert solve_exact(g, 2, s)[0].winner == oracle_solve(g, 2, s).winner == "Bob"
    verdict, _ = solve_exact(g, 2, GameState.initial(g, 2, [1, 0, 2]))
    assert verdict.winner == "Bob" and verdict.witness == 1


def test_game_chromatic_number_examples():
    assert game_chromatic_number(Graph.path(2), 4) == 2
    assert game_chromatic_number(Graph.path(4), 4) == 3
    assert game_chromatic_number(Graph.complete(4), 3) == math.inf
    with pytest.raises(ValueError):
        game_chromatic_number(Graph.path(2), 0)


def test_exact_matches_oracle_small_corpus():
    graphs = list(enumerate_small_graphs("connected", 5))
    rng = random.Random(7)
    graphs += [random_connected_graph(rng, 2, 6) for _ in range(40)]
    for g in graphs:
        for k in range(1, 4):
            assert solve_exact(g, k)[0].winner == oracle_solve(g, k).winner, (g.edges(), k)


def test_leaf_roles_do_not_change_verdicts():
    g = attach_leaves(Graph.path(3), 1, 3)
    plain = Graph.from_edges(g.n, g.edges())
    for k in range(1, 4):
        assert solve_exact(g, k)[0].winner == solve_exact(plain, k)[0].winner == oracle_solve(plain, k).winner


# -- certificates ----------------------------------------------------------

def test_searched_certificate_on_triangle():
    g = Graph.cycle(3)
    cert = certify_bob_win(g, 2, "searched")
    assert verify_certificate(cert, g, 2)


def test_searched_policy_loses_on_trees():
    tree = attach_leaves(Graph.path(3), 1, 2)
    with pytest.raises(PolicyLoss):
        certify_bob_win(tree, 4, "searched")


def test_certify_rejects_bad_symmetry():
    g = Graph.path(3).with_symmetries([(1, 0, 2)])
    with pytest.raises(InvalidSymmetry):
        certify_bob_win(g, 2, "searched")


def test_certify_budget():
    with pytest.raises(BudgetExceeded):
        certify_bob_win(build_theorem_graph(3, 1, 8), 4, "scripted", budget=10)


def test_theorem_certificate_verifies(theorem_certificate, theorem_graph):
    cert = theorem_certificate
    assert cert.stats["nodes"] == len(cert.nodes)
    result = verify_certificate(cert, theorem_graph, 4)
    assert result.ok, result.reason
    assert result.nodes_checked == len(cert.nodes)


def test_certificate_json_round_trip(theorem_certificate, theorem_graph):
    again = Certificate.from_json(copy.deepcopy(theorem_certificate.to_json()))
    assert again.to_json() == theorem_certificate.to_json()
    assert verify_certificate(again, theorem_graph, 4)


def _tampered(cert, edit):
    c = Certificate.from_json(copy.deepcopy(cert.to_json()))
    edit(c)
    return c


def test_tamper_deleted_class(theorem_certificate, theorem_graph):
    c = _tampered(theorem_certificate, lambda c: c.nodes[5]["classes"].pop(3))
    r = verify_certificate(c, theorem_graph, 4)
    assert not r and "classes" in r.reason


def test_tamper_changed_reply(theorem_certificate, theorem_graph):
    def edit(c):
        for node in c.nodes:
            for e in node["classes"]:
                if e[5] is not None and e[6] is not None and len(e) == 7:
                    e[5][1] = (e[5][1] + 1) % node_core(c, node)
                    return
    assert not verify_certificate(_tampered(theorem_certificate, edit), theorem_graph, 4)


def node_core(c, node):
    return c.structures[node["s"]]["n_core"]


def test_tamper_changed_size(theorem_certificate, theorem_graph):
    def edit(c):
        c.nodes[0]["classes"][0][3] += 1
    assert not verify_certificate(_tampered(theorem_certificate, edit), theorem_graph, 4)


def test_tamper_forbidden_sets(theorem_certificate, theorem_graph):
    def edit(c):
        node = c.nodes[-1]
        node["phi"][0] ^= 1
    assert not verify_certificate(_tampered(theorem_certificate, edit), theorem_graph, 4)


def test_tamper_dominance_target(theorem_certificate, theorem_graph):
    def edit(c):
        for node in c.nodes:
            for e in node["classes"]:
                if len(e) > 7:
                    e[6] = 0
                    return
        raise AssertionError("no dominance step in the certificate")
    assert not verify_certificate(_tampered(theorem_certificate, edit), theorem_graph, 4)


def test_certificate_on_other_graph(theorem_certificate):
    other = build_theorem_graph(3, 1, 7)
    assert not verify_certificate(theorem_certificate, other, 4)
    spoofed = _tampered(theorem_certificate, lambda c: setattr(c, "graph_sha256", graph_digest(other)))
    r = verify_certificate(spoofed, other, 4)
    assert not r and "does not match" in r.reason
    assert not verify_certificate(theorem_certificate, build_theorem_graph(3, 1, 8), 5)


def test_dominance_relation():
    g = Graph.path(3)
    s = GameState.initial(attach_leaves(g, 1, 2), 3)
    region = Position.from_state(s, [1])
    assert region.n_core == 1 and region.struct.open
    after_boundary = region.apply((VERTEX, 1, 1)).apply((LEAF, 0, 2))
    after_pass = region.apply((PASS, -1, 0)).apply((LEAF, 0, 2))
    assert dominates(after_boundary, after_pass)
    assert not dominates(after_pass, after_boundary)
