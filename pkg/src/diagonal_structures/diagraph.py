"""The diagonal graph on ``T^m``: two tuples are joined when they share a part of some ``Q_i``.

Edge type ``i >= 1`` means the tuples differ only in coordinate ``i``;
type 0 means one is ``[x t_1, ..., x t_m]`` for the other ``[t_1, ..., t_m]``
and some ``x != 1``.  Vertices use the tuple encoding of
:mod:`diagonal_structures.diagonal`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cartesian import MixedRadix, classify_lines, edge_lines
from .diagonal import minimal_partitions, tuple_codec, verify_special_set
from .errors import (
    DegenerateCase,
    DimensionTooSmall,
    ExceptionalCase,
    NotApplicable,
    NotDiagonalGraph,
    NotHamming,
    NotLatin,
    NotLatinSquareGraph,
    NotSpecial,
    OrderTooSmall,
    SizeLimitExceeded,
)
from .graphs import CHROMATIC_LIMIT, SimpleGraph, chromatic_number_exact
from .groups import Group, complete_mappings, hall_paige_predicate, is_characteristically_simple
from .latin import recover_square_from_graph
from .partitions import Partition

GRAPH_VERTEX_LIMIT = 10**5
BFS_VERTEX_LIMIT = 10**4

# (|V|, valency) of the diagonal graphs whose semilattice is not determined by the graph
EXCEPTIONAL_FINGERPRINTS = {
    (4, 3): "D(C2,2)",
    (9, 6): "D(C3,2)",
    (16, 9): "D(C4,2) or D(C2xC2,2)",
    (8, 4): "D(C2,3)",
}


@dataclass
class DiagonalGraph:
    group: Group = field(repr=False)
    m: int
    codec: MixedRadix = field(repr=False)
    graph: SimpleGraph = field(repr=False)
    edge_type: dict = field(repr=False)   # (u, v) with u < v -> type
    types: list = field(repr=False)       # Q_0 .. Q_m

    @property
    def num_vertices(self) -> int:
        return self.graph.n

    def vertex(self, t: Sequence[int]) -> int:
        return self.codec.encode(t)

    def tuple_of(self, v: int) -> tuple:
        return self.codec.decode(v)


def build_graph(t: Group, m: int, limit: int = GRAPH_VERTEX_LIMIT) -> DiagonalGraph:
    if m < 2:
        raise DimensionTooSmall("diagonal graphs need m >= 2", witness=m)
    size = t.order ** m
    if size > limit:
        raise SizeLimitExceeded("diagonal graph vertices", size, limit)
    qs = minimal_partitions(t, m)
    edge_type: dict = {}
    for i, q in enumerate(qs):
        for block in q.parts:
            for a in range(len(block)):
                for b in range(a + 1, len(block)):
                    key = (block[a], block[b])
                    if key in edge_type:  # pragma: no cover - types are unique
                        raise AssertionError(f"pair {key} has types {edge_type[key]} and {i}")
                    edge_type[key] = i
    g = SimpleGraph(size, edge_type.keys())
    return DiagonalGraph(t, m, tuple_codec(t, m), g, edge_type, qs)


def export_graph(dg: DiagonalGraph) -> str:
    lines = [f"vertices {dg.num_vertices} types {dg.m + 1}"]
    lines += [f"{u} {v} {k}" for (u, v), k in sorted(dg.edge_type.items())]
    return "\n".join(lines) + "\n"


def _as_tuple(dg: DiagonalGraph, v) -> tuple:
    return dg.tuple_of(v) if isinstance(v, int) else tuple(v)


def distance_parts(t: Group, u: Sequence[int], v: Sequence[int]) -> tuple[int, int]:
    """``(d1, d2)``: Hamming distance and ``m - l + 1``.

    ``l`` is the largest number of coordinates sharing one non-identity value
    of ``u_i v_i^-1`` (``0`` if there is none).
    """
    m = len(u)
    d1 = sum(1 for a, b in zip(u, v) if a != b)
    ratios = Counter(t.mul[a][t.inv[b]] for a, b in zip(u, v))
    ratios.pop(t.identity, None)
    ell = max(ratios.values(), default=0)
    return d1, m - ell + 1


def distance(dg: DiagonalGraph, u, v) -> int:
    a, b = _as_tuple(dg, u), _as_tuple(dg, v)
    return min(distance_parts(dg.group, a, b))


def diameter_formula(order: int, m: int) -> int:
    return m + 1 - math.ceil((m + 1) / order)


def diameter(t: Group, m: int, bfs: bool = False, limit: int = BFS_VERTEX_LIMIT) -> int:
    value = diameter_formula(t.order, m)
    if bfs:
        size = t.order ** m
        if size > limit:
            raise SizeLimitExceeded("BFS diameter", size, limit)
        ecc = max(build_graph(t, m).graph.bfs(0))
        if ecc != value:  # pragma: no cover - would contradict the formula
            raise AssertionError(f"BFS eccentricity {ecc} differs from formula {value}")
    return value


def lines_and_clique_number(dg: DiagonalGraph) -> tuple[dict, int]:
    """Lines (parts of each ``Q_i``) grouped by type, and the clique number ``|T|``."""
    if dg.m == 2 and dg.group.order == 2:
        raise DegenerateCase("the graph is K4, whose clique number is 4", witness=(2, 2))
    lines = {i: list(q.parts) for i, q in enumerate(dg.types)}
    return lines, dg.group.order


# --- colourings ---------------------------------------------------------------

@dataclass
class Coloring:
    colors: list
    palette: int
    method: str

    def is_proper(self, g: SimpleGraph) -> bool:
        return g.is_proper_coloring(self.colors)


def _odd_colour(t: Group, tup: Sequence[int]) -> int:
    acc = t.identity
    for i, x in enumerate(tup):
        acc = t.mul[acc][x if i % 2 == 0 else t.inv[x]]
    return acc


def _even_colour(t: Group, tup: Sequence[int], psi: Sequence[int]) -> int:
    acc = t.identity
    for i, x in enumerate(tup[:-1]):
        acc = t.mul[acc][t.inv[x] if i % 2 == 0 else x]
    return t.mul[acc][psi[tup[-1]]]


def reduction_homomorphism(t: Group, m: int, vertex: Sequence[int]) -> tuple:
    """``[t1, ..., tm] -> [t1 t2^-1 t3, t4, ..., tm]``."""
    if m < 3:
        raise DimensionTooSmall("the reduction needs m >= 3", witness=m)
    t1, t2, t3 = vertex[0], vertex[1], vertex[2]
    return (t.mul[t.mul[t1][t.inv[t2]]][t3],) + tuple(vertex[3:])


def proper_coloring(t: Group, m: int, limit: int = GRAPH_VERTEX_LIMIT,
                    dg: Optional[DiagonalGraph] = None) -> Coloring:
    """A proper colouring of the diagonal graph, checked edge by edge."""
    dg = dg or build_graph(t, m, limit)
    tuples = [dg.tuple_of(v) for v in range(dg.num_vertices)]
    if m % 2 == 1:
        colors = [_odd_colour(t, tup) for tup in tuples]
        method = "alternating product"
    elif hall_paige_predicate(t):
        phi = complete_mappings(t)
        psi = [t.mul[x][phi[x]] for x in range(t.order)]
        colors = [_even_colour(t, tup, psi) for tup in tuples]
        method = "orthomorphism"
    else:
        if t.order ** 2 > CHROMATIC_LIMIT:
            raise SizeLimitExceeded("exact colouring of the dimension-2 graph", t.order ** 2, CHROMATIC_LIMIT)
        base = build_graph(t, 2)
        _, base_colors = chromatic_number_exact(base.graph, return_coloring=True)
        colors = []
        for tup in tuples:
            k = m
            while k > 2:
                tup = reduction_homomorphism(t, k, tup)
                k -= 2
            colors.append(base_colors[base.vertex(tup)])
        method = "reduction to dimension 2 with exact colouring"
    if not dg.graph.is_proper_coloring(colors):  # pragma: no cover - constructions are proper
        raise AssertionError(f"{method} colouring is not proper")
    return Coloring(colors, len(set(colors)), method)


# --- recovering the semilattice -------------------------------------------------

def recover_semilattice_from_graph(g: SimpleGraph) -> list[Partition]:
    """The partitions ``Q_0, ..., Q_m`` (in some order) determined by a diagonal graph."""
    degs = set(g.degrees())
    if len(degs) != 1:
        raise NotDiagonalGraph("graph is not regular")
    k = degs.pop()
    fingerprint = (g.n, k)
    if fingerprint in EXCEPTIONAL_FINGERPRINTS:
        raise ExceptionalCase(f"graph matches {EXCEPTIONAL_FINGERPRINTS[fingerprint]}",
                              witness=fingerprint)
    if k % 3 == 0 and (k // 3 + 1) ** 2 == g.n:
        try:
            return list(recover_square_from_graph(g).partitions())
        except (NotLatinSquareGraph, OrderTooSmall, NotLatin):
            pass
    try:
        lines, _ = edge_lines(g)
    except NotHamming as exc:
        raise NotDiagonalGraph(str(exc), witness=exc.witness)
    types = classify_lines(g, lines)
    qs = []
    for tid in range(max(types) + 1):
        blocks = [line for line, ty in zip(lines, types) if ty == tid]
        try:
            qs.append(Partition.from_parts(g.n, blocks))
        except ValueError as exc:
            raise NotDiagonalGraph(f"lines of one type do not partition the vertices: {exc}")
    if len(qs) < 3:
        raise NotDiagonalGraph(f"only {len(qs)} line types found")
    try:
        verify_special_set(qs)
    except (NotSpecial, DimensionTooSmall) as exc:
        raise NotDiagonalGraph(f"line types are not a special set: {exc}", witness=exc.witness)
    edges = set()
    for q in qs:
        for block in q.parts:
            edges.update((block[a], block[b]) for a in range(len(block)) for b in range(a + 1, len(block)))
    if edges != g.edge_set():
        raise NotDiagonalGraph("line types do not reproduce the edge set")
    return qs


# --- synchronization -------------------------------------------------------

@dataclass
class SyncCertificate:
    clique: tuple
    coloring: Coloring

    @property
    def clique_size(self) -> int:
        return len(self.clique)


def synchronization_witness(t: Group, m: int, limit: int = GRAPH_VERTEX_LIMIT) -> SyncCertificate:
    """A clique and a proper colouring of equal size on the diagonal graph."""
    if m < 2:
        raise DimensionTooSmall("m must be at least 2", witness=m)
    if t.order < 3:
        raise NotApplicable("groups of order 2 are excluded", witness=t.order)
    if not is_characteristically_simple(t):
        raise NotApplicable("group is not characteristically simple; the action is imprimitive")
    dg = build_graph(t, m, limit)
    clique = dg.types[1].parts[0]
    coloring = proper_coloring(t, m, dg=dg)
    if not dg.graph.is_clique(clique) or coloring.palette != len(clique):  # pragma: no cover
        raise AssertionError("clique size and palette differ")
    return SyncCertificate(tuple(clique), coloring)
