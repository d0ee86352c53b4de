"""Cartesian decompositions, their lattices, and Hamming graphs.

Tuples over alphabets of sizes ``s_1, ..., s_n`` are encoded little-endian
mixed radix: ``(t_1, ..., t_n) -> t_1 + s_1 * (t_2 + s_2 * (...))``, so the
first coordinate varies fastest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NotCartesian, NotHamming, SizeLimitExceeded
from .graphs import SimpleGraph
from .partitions import DisjointSet, Partition, _check_same_ground, join_all, meet, meet_all, trivial_partitions

LATTICE_DIMENSION_LIMIT = 16
HAMMING_VERTEX_LIMIT = 10**6


class MixedRadix:
    """Bijection between tuples in ``range(s_1) x ... x range(s_n)`` and ``range(prod s_i)``."""

    def __init__(self, sizes: Sequence[int]):
        self.sizes = tuple(int(s) for s in sizes)
        self.weights = tuple(int(w) for w in np.cumprod((1,) + self.sizes[:-1]))
        self.size = int(np.prod(self.sizes, dtype=object)) if self.sizes else 1

    def encode(self, t: Sequence[int]) -> int:
        return sum(x * w for x, w in zip(t, self.weights))

    def decode(self, index: int) -> tuple:
        out = []
        for s in self.sizes:
            index, r = divmod(index, s)
            out.append(r)
        return tuple(out)

    def digits(self) -> np.ndarray:
        """Array of shape ``(size, n)``: row ``x`` is ``decode(x)``."""
        idx = np.arange(self.size, dtype=np.int64)
        cols = []
        for s in self.sizes:
            cols.append(idx % s)
            idx = idx // s
        return np.stack(cols, axis=1) if cols else np.zeros((self.size, 0), dtype=np.int64)

    def encode_array(self, digits: np.ndarray) -> np.ndarray:
        return digits @ np.asarray(self.weights, dtype=np.int64)


def cartesian_witness(parts: Sequence[Partition]) -> Optional[tuple]:
    """``None`` if ``parts`` is a Cartesian decomposition, else a reason tuple.

    Witnesses: ``("trivial", i)`` for a partition with fewer than two parts,
    ``("count", product, N)`` when part counts do not multiply to ``N``,
    ``("collision", x, y)`` for two elements in the same part of every ``P_i``.
    """
    if not parts:
        return ("empty",)
    _check_same_ground(*parts)
    n = parts[0].size
    for i, p in enumerate(parts):
        if p.num_parts < 2:
            return ("trivial", i)
    product = 1
    for p in parts:
        product *= p.num_parts
    if product != n:
        return ("count", product, n)
    codes = np.zeros(n, dtype=np.int64)
    for p in parts:
        codes = codes * p.num_parts + p.labels
    order = np.argsort(codes, kind="stable")
    dup = np.flatnonzero(codes[order][1:] == codes[order][:-1])
    if len(dup):
        k = int(dup[0])
        return ("collision", int(order[k]), int(order[k + 1]))
    return None


def is_cartesian_decomposition(parts: Sequence[Partition]) -> bool:
    return cartesian_witness(parts) is None


@dataclass(frozen=True)
class CartesianDecomposition:
    maximal_partitions: tuple

    def __post_init__(self):
        bad = cartesian_witness(self.maximal_partitions)
        if bad is not None:
            raise NotCartesian("not a Cartesian decomposition", witness=bad)

    @property
    def dimension(self) -> int:
        return len(self.maximal_partitions)

    @property
    def size(self) -> int:
        return self.maximal_partitions[0].size

    def alphabet_sizes(self) -> tuple:
        return tuple(p.num_parts for p in self.maximal_partitions)

    def coordinates(self) -> np.ndarray:
        return np.stack([p.labels for p in self.maximal_partitions], axis=1)

    def minimal_partitions(self) -> list[Partition]:
        """``Q_i``: meet of all ``P_j`` with ``j != i``."""
        ps = self.maximal_partitions
        if len(ps) == 1:
            return [trivial_partitions(ps[0].size)[1]]
        return [meet_all([p for j, p in enumerate(ps) if j != i]) for i in range(len(ps))]

    def same_as(self, other: "CartesianDecomposition") -> bool:
        """Equality up to reordering of the maximal partitions."""
        return sorted(map(_key, self.maximal_partitions)) == sorted(map(_key, other.maximal_partitions))


def _key(p: Partition) -> bytes:
    return p.labels.tobytes()


@dataclass(frozen=True)
class CartesianLattice:
    decomposition: CartesianDecomposition
    lattice: dict  # frozenset J (0-based indices) -> P_J

    def __getitem__(self, subset) -> Partition:
        return self.lattice[frozenset(subset)]

    def minimal(self, i: int) -> Partition:
        n = self.decomposition.dimension
        return self.lattice[frozenset(range(n)) - {i}]

    def partitions(self) -> list[Partition]:
        return list(self.lattice.values())


def cartesian_lattice(d: CartesianDecomposition, limit: int = LATTICE_DIMENSION_LIMIT) -> CartesianLattice:
    """All ``P_J = meet of P_j, j in J``, with ``P_{} = U``."""
    n = d.dimension
    if n > limit:
        raise SizeLimitExceeded("Cartesian lattice dimension", n, limit)
    _, top = trivial_partitions(d.size)
    lattice = {frozenset(): top}
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            lattice[frozenset(combo)] = meet(lattice[frozenset(combo[:-1])], d.maximal_partitions[combo[-1]])
    return CartesianLattice(d, lattice)


def generates_cartesian_lattice(minimal: Sequence[Partition]) -> bool:
    """Whether ``minimal`` are the minimal partitions ``Q_i`` of some Cartesian lattice.

    ``P_i`` is taken as the join of the others; it must be a Cartesian
    decomposition whose minimal partitions give back the ``Q_i``.
    """
    return special_subset_failure(minimal) is None


def special_subset_failure(minimal: Sequence[Partition]) -> Optional[tuple]:
    """Reason ``minimal`` fails to be the minimal layer of a Cartesian lattice, or ``None``."""
    qs = list(minimal)
    n = len(qs)
    if n == 1:
        # only the trivial decomposition {E} has Q_1 = U
        return None if qs[0].num_parts == 1 and qs[0].size >= 2 else ("trivial",)
    maxima = [join_all([q for j, q in enumerate(qs) if j != i]) for i in range(n)]
    bad = cartesian_witness(maxima)
    if bad is not None:
        return ("not-cartesian",) + bad
    for i in range(n):
        if meet_all([p for j, p in enumerate(maxima) if j != i]) != qs[i]:
            return ("not-minimal", i)
    return None


def hamming_graph(alphabet_sizes: Sequence[int], limit: int = HAMMING_VERTEX_LIMIT) -> tuple[SimpleGraph, MixedRadix]:
    """Mixed-alphabet Hamming graph and its tuple codec."""
    if any(s < 2 for s in alphabet_sizes):
        raise ValueError("every alphabet needs at least two letters")
    codec = MixedRadix(alphabet_sizes)
    if codec.size > limit:
        raise SizeLimitExceeded("Hamming graph vertices", codec.size, limit)
    digits = codec.digits()
    base = np.arange(codec.size, dtype=np.int64)
    edges = []
    for i, (s, w) in enumerate(zip(codec.sizes, codec.weights)):
        for delta in range(1, s):
            nbr = base + (((digits[:, i] + delta) % s) - digits[:, i]) * w
            keep = base < nbr
            edges.append(np.stack([base[keep], nbr[keep]], axis=1))
    pairs = np.concatenate(edges) if edges else np.zeros((0, 2), dtype=np.int64)
    return SimpleGraph(codec.size, map(tuple, pairs.tolist())), codec


def edge_lines(g: SimpleGraph) -> tuple[list[tuple], dict]:
    """Lines through edges: ``{u, v}`` plus all common neighbours.

    Returns the distinct lines (sorted vertex tuples, ordered by first
    occurrence along the sorted edge list) and the map edge -> line id.
    Raises ``NotHamming`` if some line is not a clique.
    """
    lines: list[tuple] = []
    index: dict = {}
    edge_line: dict = {}
    for u, v in g.edges():
        if (u, v) in edge_line:
            continue
        line = tuple(sorted({u, v} | g.common_neighbors(u, v)))
        if not g.is_clique(line):
            raise NotHamming("common neighbours of an edge do not form a clique", witness=(u, v))
        lid = index.get(line)
        if lid is None:
            lid = index[line] = len(lines)
            lines.append(line)
        for a, b in itertools.combinations(line, 2):
            prev = edge_line.setdefault((a, b), lid)
            if prev != lid:
                raise NotHamming("edge lies in two lines", witness=(a, b))
    return lines, edge_line


def classify_lines(g: SimpleGraph, lines: Sequence[tuple]) -> list[int]:
    """Type of each line: components of the 'parallel' relation.

    Two disjoint lines are parallel when the edges between them form a
    perfect matching.  Returns a type id per line, numbered by first line.
    """
    line_of: list[list[int]] = [[] for _ in range(g.n)]
    for lid, line in enumerate(lines):
        for v in line:
            line_of[v].append(lid)
    dsu = DisjointSet(len(lines))
    for lid, line in enumerate(lines):
        members = set(line)
        # count edges from this line into each other line
        hits: dict = {}
        for u in line:
            for w in g.neighbors(u):
                if w in members:
                    continue
                for other in line_of[w]:
                    hits.setdefault(other, []).append((u, w))
        for other, between in hits.items():
            if other <= lid or members & set(lines[other]):
                continue
            if len(lines[other]) != len(line) or len(between) != len(line):
                continue
            if len({u for u, _ in between}) == len(line) and len({w for _, w in between}) == len(line):
                dsu.union(lid, other)
    roots = [dsu.find(k) for k in range(len(lines))]
    return Partition(roots).labels.tolist()


def recover_cartesian_from_hamming(g: SimpleGraph) -> CartesianDecomposition:
    """The Cartesian decomposition whose Hamming graph is ``g``."""
    if g.n < 2 or not g.is_connected():
        raise NotHamming("graph must be connected with at least two vertices")
    if g.num_edges == g.n * (g.n - 1) // 2:
        return CartesianDecomposition((trivial_partitions(g.n)[0],))
    lines, _ = edge_lines(g)
    types = classify_lines(g, lines)
    ntypes = max(types) + 1
    # Q_i: vertices joined by lines of type i
    qs = []
    for t in range(ntypes):
        dsu = DisjointSet(g.n)
        seen_at = [0] * g.n
        for lid, line in enumerate(lines):
            if types[lid] != t:
                continue
            for v in line:
                seen_at[v] += 1
                if seen_at[v] > 1:
                    raise NotHamming("vertex lies in two lines of the same type", witness=(v, t))
            for v in line[1:]:
                dsu.union(line[0], v)
        qs.append(Partition([dsu.find(v) for v in range(g.n)]))
    ps = [join_all([q for j, q in enumerate(qs) if j != i]) for i in range(ntypes)]
    try:
        d = CartesianDecomposition(tuple(ps))
    except NotCartesian as exc:
        raise NotHamming("line types do not give a Cartesian decomposition", witness=exc.witness)
    _check_hamming_edges(g, d)
    return d


def _check_hamming_edges(g: SimpleGraph, d: CartesianDecomposition) -> None:
    coords = d.coordinates()
    expected = sum(g.n * (s - 1) for s in d.alphabet_sizes()) // 2
    if g.num_edges != expected:
        raise NotHamming(f"expected {expected} edges, found {g.num_edges}")
    for u, v in g.edges():
        if int((coords[u] != coords[v]).sum()) != 1:
            raise NotHamming("edge joins tuples differing in more than one coordinate", witness=(u, v))


def hamming_graph_from_partitions(parts: Sequence[Partition]) -> SimpleGraph:
    """Graph joining two elements when they share a part of some ``Q`` in ``parts`` (``Q`` = minimal partitions)."""
    n = parts[0].size
    edges = set()
    for q in parts:
        for block in q.parts:
            for a, b in itertools.combinations(block, 2):
                edges.add((a, b))
    return SimpleGraph(n, edges)
