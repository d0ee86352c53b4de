import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagonal_structures.errors import SizeLimitExceeded
from diagonal_structures.graphs import (
    SimpleGraph,
    chromatic_number_exact,
    complete_graph,
    complete_multipartite,
    greedy_clique,
    srg_parameters,
)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return SimpleGraph(n, chosen)


def brute_force_chromatic(g):
    for k in range(1, g.n + 1):
        for colours in itertools.product(range(k), repeat=g.n):
            if g.is_proper_coloring(colours):
                return k
    return 0


def test_basics():
    g = SimpleGraph(4, [(0, 1), (1, 2), (2, 0), (3, 2)])
    assert g.degrees() == [2, 2, 3, 1]
    assert list(g.edges()) == [(0, 1), (0, 2), (1, 2), (2, 3)]
    assert g.bfs(3) == [2, 2, 1, 0]
    assert g.common_neighbors(0, 1) == {2}
    assert g.is_clique([0, 1, 2]) and not g.is_clique([0, 3])
    assert g.complement().num_edges == 2
    assert g.induced([0, 1, 2]).num_edges == 3


def test_strongly_regular():
    assert srg_parameters(complete_multipartite([3, 3, 3])) == (9, 6, 3, 6)
    petersen = nx.petersen_graph()
    assert srg_parameters(SimpleGraph(10, petersen.edges())) == (10, 3, 0, 1)
    assert srg_parameters(SimpleGraph(4, [(0, 1), (1, 2), (2, 3)])) is None


@pytest.mark.parametrize("g,chi", [
    (complete_graph(4), 4), (complete_multipartite([3, 3, 3]), 3), (complete_graph(1), 1),
    (SimpleGraph(5, [(i, (i + 1) % 5) for i in range(5)]), 3),
    (SimpleGraph(10, nx.petersen_graph().edges()), 3),
])
def test_known_chromatic_numbers(g, chi):
    value, colours = chromatic_number_exact(g, return_coloring=True)
    assert value == chi
    assert g.is_proper_coloring(colours) and len(set(colours)) == chi


def test_chromatic_limit():
    with pytest.raises(SizeLimitExceeded):
        chromatic_number_exact(complete_graph(70))


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_chromatic_matches_brute_force(g):
    assert chromatic_number_exact(g) == brute_force_chromatic(g)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_greedy_clique_is_clique(g):
    c = greedy_clique(g)
    assert g.is_clique(c)
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    assert 1 <= len(c) <= max(len(k) for k in nx.find_cliques(h))
