import pytest

from colorgame.constructions import build_theorem_graph
from colorgame.solver import certify_bob_win


@pytest.fixture(scope="session")
def theorem_graph():
    return build_theorem_graph(3, 1, 8)


@pytest.fixture(scope="session")
def theorem_certificate(theorem_graph):
    return certify_bob_win(theorem_graph, 4, "scripted")
