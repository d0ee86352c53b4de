import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagonal_structures.cartesian import (
    CartesianDecomposition,
    MixedRadix,
    cartesian_lattice,
    cartesian_witness,
    generates_cartesian_lattice,
    hamming_graph,
    hamming_graph_from_partitions,
    recover_cartesian_from_hamming,
    special_subset_failure,
)
from diagonal_structures.errors import NotCartesian, NotHamming, SizeLimitExceeded
from diagonal_structures.graphs import SimpleGraph, complete_graph, srg_parameters
from diagonal_structures.partitions import Partition, is_refinement, join, meet

alphabets = st.lists(st.integers(2, 5), min_size=1, max_size=4).filter(lambda s: math.prod(s) <= 80)


def coordinate_partitions(sizes):
    d = MixedRadix(sizes).digits()
    return [Partition(d[:, i]) for i in range(len(sizes))]


def permuted(g, perm):
    return SimpleGraph(g.n, [(int(perm[u]), int(perm[v])) for u, v in g.edges()])


def shrikhande():
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    cells = list(itertools.product(range(4), range(4)))
    index = {c: k for k, c in enumerate(cells)}
    edges = [(index[a], index[b]) for a, b in itertools.combinations(cells, 2)
             if ((b[0] - a[0]) % 4, (b[1] - a[1]) % 4) in conn]
    return SimpleGraph(16, edges)


@given(alphabets, st.data())
def test_mixed_radix_round_trip(sizes, data):
    codec = MixedRadix(sizes)
    x = data.draw(st.integers(0, codec.size - 1))
    t = codec.decode(x)
    assert codec.encode(t) == x
    assert tuple(codec.digits()[x]) == t
    assert codec.decode(1)[0] == 1  # first coordinate is fastest


class TestDecompositions:
    def test_grid(self):
        d = CartesianDecomposition(tuple(coordinate_partitions((3, 4))))
        assert d.dimension == 2 and d.alphabet_sizes() == (3, 4) and d.size == 12

    def test_witnesses(self):
        rows, cols = coordinate_partitions((3, 3))
        assert cartesian_witness([rows, cols]) is None
        assert cartesian_witness([rows, Partition([0] * 9)])[0] == "trivial"
        assert cartesian_witness([rows, rows])[0] == "collision"
        letters = Partition([0, 1, 2, 1, 2, 0, 2, 0, 1])
        assert cartesian_witness([rows, Partition([0, 0, 1, 1, 2, 2, 3, 3, 4])])[0] == "count"
        assert cartesian_witness([rows, letters]) is None
        assert cartesian_witness([]) == ("empty",)

    def test_rejects(self):
        rows, _ = coordinate_partitions((3, 3))
        with pytest.raises(NotCartesian):
            CartesianDecomposition((rows, rows))

    def test_lattice_limit(self):
        d = CartesianDecomposition(tuple(coordinate_partitions((2,) * 3)))
        with pytest.raises(SizeLimitExceeded):
            cartesian_lattice(d, limit=2)


@settings(max_examples=60, deadline=None)
@given(alphabets)
def test_lattice_is_antiisomorphic_to_subsets(sizes):
    d = CartesianDecomposition(tuple(coordinate_partitions(sizes)))
    lat = cartesian_lattice(d)
    n = len(sizes)
    subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]
    assert len({lat[s] for s in subsets}) == 2 ** n
    for a in subsets:
        assert lat[a].num_parts == math.prod(sizes[i] for i in a)
        for b in subsets:
            assert is_refinement(lat[a], lat[b]) == (b <= a)
            assert meet(lat[a], lat[b]) == lat[a | b]
            assert join(lat[a], lat[b]) == lat[a & b]


@settings(max_examples=60, deadline=None)
@given(alphabets)
def test_minimal_partitions_generate_lattice(sizes):
    d = CartesianDecomposition(tuple(coordinate_partitions(sizes)))
    qs = d.minimal_partitions()
    assert generates_cartesian_lattice(qs)
    if len(qs) > 1:
        assert all(q.num_parts == d.size // s for q, s in zip(qs, sizes))


def test_special_subset_failures():
    rows, cols = coordinate_partitions((3, 3))
    assert special_subset_failure([rows, rows])[0] == "not-cartesian"
    assert special_subset_failure([Partition(range(4))]) == ("trivial",)


@settings(max_examples=60, deadline=None)
@given(alphabets.filter(lambda s: len(s) > 1 or s[0] > 1), st.randoms(use_true_random=False))
def test_hamming_recovery_after_relabelling(sizes, rnd):
    g, codec = hamming_graph(sizes)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = permuted(g, perm)
    d = recover_cartesian_from_hamming(h)
    truth = []
    for p in coordinate_partitions(sizes):
        lab = np.empty(g.n, dtype=np.int64)
        lab[perm] = p.labels
        truth.append(Partition(lab))
    if len(sizes) == 1:
        assert d.dimension == 1
    else:
        assert d.same_as(CartesianDecomposition(tuple(truth)))
        assert hamming_graph_from_partitions(d.minimal_partitions()).edge_set() == h.edge_set()


class TestHammingGraphs:
    def test_parameters(self):
        g, _ = hamming_graph((4, 4))
        assert srg_parameters(g) == (16, 6, 2, 2)
        g, _ = hamming_graph((2, 2, 2))
        assert g.num_edges == 12

    def test_complete_graph_is_trivial(self):
        d = recover_cartesian_from_hamming(complete_graph(5))
        assert d.dimension == 1 and d.alphabet_sizes() == (5,)

    def test_shrikhande_is_not_hamming(self):
        g = shrikhande()
        assert srg_parameters(g) == (16, 6, 2, 2)
        with pytest.raises(NotHamming):
            recover_cartesian_from_hamming(g)

    def test_cycle_is_not_hamming(self):
        with pytest.raises(NotHamming):
            recover_cartesian_from_hamming(SimpleGraph(5, [(i, (i + 1) % 5) for i in range(5)]))

    def test_disconnected(self):
        with pytest.raises(NotHamming):
            recover_cartesian_from_hamming(SimpleGraph(4, [(0, 1), (2, 3)]))

    def test_alphabet_too_small(self):
        with pytest.raises(ValueError):
            hamming_graph((1, 3))
