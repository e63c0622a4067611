import itertools
import math

import networkx as nx
import pytest

from colorgame.constructions import (FAMILIES, build_sidorowicz, build_theorem_graph, build_thin4_forest,
                                     enumerate_small_graphs, free_trees, theorem_roles)
from colorgame.errors import InvalidParameter, LimitExceeded, NotAForest
from colorgame.graph import Graph, cycle_distance, girth, is_cactus, validate_symmetry
from colorgame.io import graph_from_json, graph_to_json


def test_theorem_graph_counts():
    g = build_theorem_graph(3, 1, 8)
    assert (g.n, g.edge_count) == (630, 648)
    internal = g.internal_vertices()
    assert len(internal) == 70
    assert all(len(g.leaves_of(v)) == 8 for v in internal)
    comps = g.components()
    assert len(comps) == 2
    for comp in comps:
        inner = [v for v in comp if v in set(internal)]
        assert len(inner) == 35
        assert sum(1 for u in inner for w in g.adj[u] if w in set(inner) and u < w) == 44


def test_theorem_graph_structure():
    g = build_theorem_graph(7, 3, 8)
    assert girth(g) == 7 and is_cactus(g)
    roles = theorem_roles(g)
    for comp in (0, 1):
        spine = [roles[(comp, "spine", s)] for s in ("x", "y", "z", "y'", "x'")]
        assert all(b in g.adj[a] for a, b in zip(spine, spine[1:]))


def test_theorem_graph_symmetries():
    g = build_theorem_graph(5, 2, 4)
    assert len(g.symmetries) >= 4
    assert all(validate_symmetry(g, p) for p in g.symmetries)
    comps = [set(c) for c in g.components()]
    assert any(all(p[v] in comps[1] for v in comps[0]) for p in g.symmetries)


def test_theorem_graph_rejects_bad_params():
    for params in ((4, 1, 8), (1, 1, 8), (3, 0, 8), (3, 1, 0)):
        with pytest.raises(InvalidParameter):
            build_theorem_graph(*params)


@pytest.mark.parametrize("cycle_len,path_len,leaves",
                         list(itertools.product((3, 5, 7), (1, 2, 3), (4, 8))))
def test_parameter_sweep(cycle_len, path_len, leaves):
    g = build_theorem_graph(cycle_len, path_len, leaves)
    assert girth(g) == cycle_len
    assert is_cactus(g)
    # consecutive spine vertices' gadgets are path_len + 1 + path_len apart, two
    # gadgets of the same spine vertex are 2 * path_len apart
    assert cycle_distance(g) == 2 * path_len


def test_sidorowicz():
    g = build_sidorowicz(7, 4)
    internal = g.internal_vertices()
    assert len(internal) == 15
    assert g.n - len(internal) == 60
    assert is_cactus(g) and girth(g) == 3 and cycle_distance(g) == 0
    for t, lv in itertools.product((1, 2, 5), (0, 3)):
        h = build_sidorowicz(t, lv)
        assert is_cactus(h) and girth(h) == 3
    k3 = build_sidorowicz(1, 0)
    assert nx.is_isomorphic(k3.to_networkx(), nx.complete_graph(3))


def test_thin4():
    c4 = build_thin4_forest([(0, 1)], [(0, 1)])
    assert nx.is_isomorphic(c4.to_networkx(), nx.cycle_graph(4))
    g = build_thin4_forest([(0, 1), (1, 2)], [(0, 1)])
    assert g.n == 5 and girth(g) == 4
    with pytest.raises(NotAForest):
        build_thin4_forest([(0, 1), (1, 2), (0, 2)])
    with pytest.raises(InvalidParameter):
        build_thin4_forest([(0, 1)], [(1, 2)])


def test_thin4_outputs_are_bipartite():
    for n in range(2, 7):
        for tree in free_trees(n):
            edges = tree.edges()
            for r in range(len(edges) + 1):
                for rep in itertools.combinations(edges, r):
                    assert nx.is_bipartite(build_thin4_forest(edges, rep, n).to_networkx())


def test_enumeration_counts():
    assert sum(1 for g in enumerate_small_graphs("trees", 5, 5)) == 3
    # OEIS A000055: free trees on 1..10 vertices
    assert [len(free_trees(n)) for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    cycles = list(enumerate_small_graphs("cycles", 6))
    assert [g.n for g in cycles] == [3, 4, 5, 6]
    assert sum(1 for _ in enumerate_small_graphs("connected", 5)) == 1 + 1 + 2 + 6 + 21


def test_cactus_enumeration_matches_filter():
    for n in range(1, 8):
        cactuses = list(enumerate_small_graphs("cactuses", n, n))
        assert all(is_cactus(g) for g in cactuses)
        atlas = [h for h in nx.graph_atlas_g()
                 if h.number_of_nodes() == n and nx.is_connected(h)
                 and is_cactus(Graph.from_edges(n, list(h.edges())))]
        assert len(cactuses) == len(atlas), n


def test_enumeration_limits():
    with pytest.raises(LimitExceeded):
        list(enumerate_small_graphs("trees", 11))
    with pytest.raises(InvalidParameter):
        list(enumerate_small_graphs("planar", 4))
    assert set(FAMILIES) >= {"paths", "cycles", "stars", "trees", "cactuses"}


@pytest.mark.parametrize("g", [build_theorem_graph(3, 1, 8), build_theorem_graph(5, 2, 4),
                               build_sidorowicz(7, 4), build_thin4_forest([(0, 1), (1, 2)], [(1, 2)])],
                         ids=["thm318", "thm524", "sidorowicz", "thin4"])
def test_generator_round_trip(g):
    again = graph_from_json(graph_to_json(g))
    assert again.structurally_equal(g)
