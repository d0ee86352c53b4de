"""Diagonal semilattices over a finite group and the diagonal group action.

Points of ``T^m`` are encoded little-endian mixed radix over element
indices (coordinate 1 varies fastest).  ``Q_i`` for ``1 <= i <= m`` groups
tuples that agree off coordinate ``i``; ``Q_0`` groups ``[x t_1, ..., x t_m]``
over ``x`` in ``T``.  ``Q_I`` is the join of ``Q_i`` over ``i`` in ``I``.

Permutations are tuples of images on point indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .cartesian import MixedRadix, special_subset_failure
from .errors import DimensionTooSmall, NotSpecial, NotTransitive, SizeLimitExceeded
from .groups import (
    Group,
    are_isomorphic,
    automorphisms,
    characteristic_subgroup_witness,
    closure_of_permutations,
    elementary_abelian_prime,
    greedy_generators,
    reduce_to_generators,
)
from .latin import cube_from_partitions, group_from_regular_cube
from .partitions import DisjointSet, Partition, join, join_all, meet, trivial_partitions

SEMILATTICE_POINT_LIMIT = 10**6
SEMILATTICE_CELL_LIMIT = 2 * 10**7   # (number of Q_I) * (points)
GENERATOR_POINT_LIMIT = 10**5
BRUTE_FORCE_POINT_LIMIT = 10**4
CLOSURE_ORDER_LIMIT = 200_000
ORACLE_DEGREE_LIMIT = 64


def tuple_codec(t: Group, m: int) -> MixedRadix:
    return MixedRadix([t.order] * m)


def _check_points(t: Group, m: int, limit: int, what: str) -> int:
    size = t.order ** m
    if size > limit:
        raise SizeLimitExceeded(what, size, limit)
    return size


def minimal_partitions(t: Group, m: int, limit: int = SEMILATTICE_POINT_LIMIT) -> list[Partition]:
    """``[Q_0, Q_1, ..., Q_m]`` on ``T^m``."""
    _check_points(t, m, limit, "diagonal semilattice points")
    codec = tuple_codec(t, m)
    d = codec.digits()
    n = t.order
    qs = []
    mul = np.array(t.mul, dtype=np.int64)
    inv = np.array(t.inv, dtype=np.int64)
    left = inv[d[:, 0]]
    key0 = np.zeros(codec.size, dtype=np.int64)
    for i in range(1, m):
        key0 = key0 * n + mul[left, d[:, i]]
    qs.append(Partition(key0))
    for i in range(m):
        key = np.zeros(codec.size, dtype=np.int64)
        for j in range(m):
            if j != i:
                key = key * n + d[:, j]
        qs.append(Partition(key))
    return qs


@dataclass
class DiagonalSemilattice:
    group: Group = field(repr=False)
    m: int
    codec: MixedRadix = field(repr=False)
    minimal: list
    suprema: dict = field(repr=False)  # frozenset I (proper subset of 0..m) -> Q_I

    def __getitem__(self, subset) -> Partition:
        subset = frozenset(subset)
        if len(subset) == self.m + 1:
            return trivial_partitions(self.codec.size)[1]
        return self.suprema[subset]

    def members(self) -> list[Partition]:
        """All ``Q_I`` together with ``U``."""
        return list(self.suprema.values()) + [trivial_partitions(self.codec.size)[1]]


def build_semilattice(t: Group, m: int, limit: int = SEMILATTICE_POINT_LIMIT) -> DiagonalSemilattice:
    """Every ``Q_I`` for proper ``I``, checked to give Cartesian lattices on each ``m``-subset."""
    if m < 2:
        raise DimensionTooSmall("dimension must be at least 2", witness=m)
    size = _check_points(t, m, limit, "diagonal semilattice points")
    if (2 ** (m + 1)) * size > SEMILATTICE_CELL_LIMIT:
        raise SizeLimitExceeded("diagonal semilattice storage", (2 ** (m + 1)) * size, SEMILATTICE_CELL_LIMIT)
    qs = minimal_partitions(t, m, limit)
    bottom, _ = trivial_partitions(size)
    sup = {frozenset(): bottom}
    for k in range(1, m + 1):
        for combo in itertools.combinations(range(m + 1), k):
            rest = frozenset(combo[:-1])
            sup[frozenset(combo)] = qs[combo[0]] if k == 1 else join(sup[rest], qs[combo[-1]])
    for omit in range(m + 1):
        bad = special_subset_failure([q for i, q in enumerate(qs) if i != omit])
        if bad is not None:  # pragma: no cover - holds for every group
            raise AssertionError(f"m-subset without Q_{omit} fails: {bad}")
    return DiagonalSemilattice(t, m, tuple_codec(t, m), qs, sup)


@dataclass(frozen=True)
class MeetWitness:
    q01: Partition
    q23: Partition
    meet: Partition
    part_size: int


def verify_not_meet_closed(s: DiagonalSemilattice) -> MeetWitness:
    """``Q_{01} ^ Q_{23}`` lies outside the semilattice."""
    if s.m < 3:
        raise DimensionTooSmall("meet closure fails only from dimension 3", witness=s.m)
    q01, q23 = s[{0, 1}], s[{2, 3}]
    mt = meet(q01, q23)
    if any(mt == p for p in s.members()):  # pragma: no cover - cannot happen
        raise AssertionError("meet unexpectedly lies in the semilattice")
    sizes = set(mt.part_sizes().tolist())
    return MeetWitness(q01, q23, mt, sizes.pop() if len(sizes) == 1 else -1)


# --- diagonal group ---------------------------------------------------------

@dataclass
class PermutationSet:
    degree: int
    generators: list  # (tag, permutation) with tag in I..V

    def permutations(self) -> list[tuple]:
        return [p for _, p in self.generators]

    def tags(self) -> list[str]:
        return [tag for tag, _ in self.generators]


def _coordinatewise(codec: MixedRadix, digits: np.ndarray, new_digits: np.ndarray) -> tuple:
    return tuple(codec.encode_array(new_digits).tolist())


def diagonal_group_generators(t: Group, m: int, limit: int = GENERATOR_POINT_LIMIT) -> PermutationSet:
    if m < 1:
        raise DimensionTooSmall("dimension must be positive", witness=m)
    size = _check_points(t, m, limit, "diagonal group degree")
    codec = tuple_codec(t, m)
    d = codec.digits()
    mul = np.array(t.mul, dtype=np.int64)
    inv = np.array(t.inv, dtype=np.int64)
    gens = greedy_generators(t)
    out: list = []
    # (I) right multiplication in one coordinate
    for i in range(m):
        for g in gens:
            nd = d.copy()
            nd[:, i] = mul[d[:, i], g]
            out.append(("I", _coordinatewise(codec, d, nd)))
    # (II) simultaneous left multiplication by an inverse
    for g in gens:
        out.append(("II", _coordinatewise(codec, d, mul[inv[g]][d])))
    # (III) automorphisms acting on every coordinate
    for a in reduce_to_generators([a for a in automorphisms(t) if list(a) != list(range(t.order))]):
        out.append(("III", _coordinatewise(codec, d, np.asarray(a)[d])))
    # (IV) adjacent coordinate swaps
    for i in range(m - 1):
        nd = d.copy()
        nd[:, [i, i + 1]] = d[:, [i + 1, i]]
        out.append(("IV", _coordinatewise(codec, d, nd)))
    # (V) [t1, ..., tm] -> [t1^-1, t1^-1 t2, ..., t1^-1 tm]
    first_inv = inv[d[:, 0]]
    nd = mul[first_inv[:, None], d]
    nd[:, 0] = first_inv
    out.append(("V", _coordinatewise(codec, d, nd)))
    return PermutationSet(size, out)


def induced_index_action(perm: Sequence[int], qs: Sequence[Partition]) -> Optional[tuple]:
    """Where ``perm`` sends each ``Q_i`` (as an index), or ``None`` if some image is not a ``Q_j``."""
    lookup = {q.labels.tobytes(): j for j, q in enumerate(qs)}
    out = []
    for q in qs:
        j = lookup.get(q.relabel(perm).labels.tobytes())
        if j is None:
            return None
        out.append(j)
    return tuple(out)


def diagonal_group_order(t: Group, m: int, brute_force: bool = False,
                         limit: int = BRUTE_FORCE_POINT_LIMIT,
                         order_limit: int = CLOSURE_ORDER_LIMIT) -> int:
    """``|T|^m * |Aut T| * (m+1)!``, optionally confirmed by closing the generators."""
    if m < 1 or (m == 1 and t.is_abelian()):
        raise DimensionTooSmall("order formula needs m >= 2 or a non-abelian group", witness=m)
    formula = t.order ** m * len(automorphisms(t)) * _factorial(m + 1)
    if brute_force:
        _check_points(t, m, limit, "brute-force closure degree")
        gens = diagonal_group_generators(t, m).permutations()
        order = len(closure_of_permutations(gens, limit=order_limit))
        if order != formula:  # pragma: no cover - would contradict the formula
            raise AssertionError(f"closure has order {order}, formula gives {formula}")
    return formula


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# --- quotients, special sets, extraction ------------------------------------

def quotient_partition(p: Partition, q: Partition) -> Partition:
    """``p`` (which must lie above ``q``) as a partition of the parts of ``q``."""
    labels = np.empty(q.num_parts, dtype=np.int64)
    labels[q.labels] = p.labels
    if not np.array_equal(labels[q.labels], p.labels):
        raise ValueError("partition does not lie above the quotient partition")
    return Partition(labels)


def quotient(partitions: Sequence[Partition], q: Partition) -> dict:
    """Map index -> quotient partition for every member above ``q`` (``q`` must be a member)."""
    if not any(p == q for p in partitions):
        raise ValueError("quotient partition is not a member of the set")
    out = {}
    for k, p in enumerate(partitions):
        labels = np.empty(q.num_parts, dtype=np.int64)
        labels[q.labels] = p.labels
        if np.array_equal(labels[q.labels], p.labels):
            out[k] = Partition(labels)
    return out


@dataclass(frozen=True)
class SpecialSet:
    partitions: tuple

    @property
    def m(self) -> int:
        return len(self.partitions) - 1

    @property
    def size(self) -> int:
        return self.partitions[0].size


def verify_special_set(cand: Sequence[Partition]) -> SpecialSet:
    """Check that any ``m`` of the ``m+1`` partitions are the minimal layer of a Cartesian lattice."""
    cand = tuple(cand)
    if len(cand) < 3:
        raise DimensionTooSmall("a special set needs at least three partitions", witness=len(cand))
    if len({p.size for p in cand}) != 1:
        raise NotSpecial("partitions live on different ground sets")
    for omit in range(len(cand)):
        bad = special_subset_failure([p for i, p in enumerate(cand) if i != omit])
        if bad is not None:
            raise NotSpecial(f"the partitions other than number {omit} fail: {bad[0]}",
                             witness=(omit,) + bad)
    return SpecialSet(cand)


def _extract_cube(qs: Sequence[Partition], letters: int) -> Group:
    coords = [i for i in range(4) if i != letters]
    ps = [join_all([qs[j] for j in coords if j != i]) for i in coords]
    cube = cube_from_partitions(*ps, qs[letters])
    g, _ = group_from_regular_cube(cube)
    return g


def _quotient_down(qs: Sequence[Partition], k: int) -> list[Partition]:
    base = qs[k]
    return [quotient_partition(join(q, base), base) for i, q in enumerate(qs) if i != k]


def _extract(qs: Sequence[Partition], distinguished_last: bool) -> Group:
    m = len(qs) - 1
    if m == 3:
        return _extract_cube(qs, 0 if distinguished_last else 3)
    return _extract(_quotient_down(qs, m if distinguished_last else 0), distinguished_last)


def extract_group(s: SpecialSet, cross_check: bool = True) -> Group:
    """The group ``T`` with ``s`` isomorphic to the minimal layer of ``D(T, m)``, ``m >= 3``."""
    if s.m < 3:
        raise DimensionTooSmall("dimension 2 special sets are Latin squares, which need not come from groups",
                                witness=s.m)
    g = _extract(s.partitions, distinguished_last=True)
    if cross_check:
        h = _extract(s.partitions, distinguished_last=False)
        if are_isomorphic(g, h) is None:  # pragma: no cover - the group is unique
            raise AssertionError("extraction depends on the distinguished partition")
    return g


# --- primitivity ---------------------------------------------------------

@dataclass(frozen=True)
class PrimitivityVerdict:
    verdict: str   # "Primitive" or "NotQuasiprimitive"
    reason: str
    witness: object = None

    @property
    def primitive(self) -> bool:
        return self.verdict == "Primitive"


def classify_primitivity(t: Group, m: int) -> PrimitivityVerdict:
    if m < 2:
        raise DimensionTooSmall("classification is stated for m >= 2", witness=m)
    if t.order < 2:
        raise ValueError("group must be non-trivial")
    sub = characteristic_subgroup_witness(t)
    if sub is not None:
        return PrimitivityVerdict("NotQuasiprimitive",
                                  f"characteristic subgroup of order {len(sub)}", tuple(sorted(sub)))
    p = elementary_abelian_prime(t)
    if p is not None and (m + 1) % p == 0:
        return PrimitivityVerdict("NotQuasiprimitive",
                                  f"elementary abelian {p}-group and {p} divides m+1={m + 1}", p)
    if p is not None:
        reason = f"characteristically simple; elementary abelian {p}-group with {p} not dividing {m + 1}"
    else:
        reason = "characteristically simple and not abelian"
    return PrimitivityVerdict("Primitive", reason)


def minimal_block(gens: Sequence[Sequence[int]], degree: int, a: int, b: int) -> Partition:
    """Finest block system in which ``a`` and ``b`` share a block."""
    dsu = DisjointSet(degree)
    pending = [(a, b)]
    while pending:
        x, y = pending.pop()
        if dsu.union(x, y):
            for g in gens:
                pending.append((g[x], g[y]))
    return Partition([dsu.find(v) for v in range(degree)])


def block_system_witness(gens: Sequence[Sequence[int]], degree: int,
                         limit: int = ORACLE_DEGREE_LIMIT) -> Optional[Partition]:
    """A non-trivial block system, or ``None`` if the action is primitive."""
    if degree > limit:
        raise SizeLimitExceeded("primitivity oracle degree", degree, limit)
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            if g[x] not in orbit:
                orbit.add(g[x])
                frontier.append(g[x])
    if len(orbit) != degree:
        raise NotTransitive("generators do not act transitively", witness=len(orbit))
    for x in range(1, degree):
        blocks = minimal_block(gens, degree, 0, x)
        if blocks.num_parts > 1:
            return blocks
    return None


def primitivity_oracle(gens, degree: Optional[int] = None, limit: int = ORACLE_DEGREE_LIMIT) -> bool:
    if isinstance(gens, PermutationSet):
        degree, perms = gens.degree, gens.permutations()
    else:
        perms = [tuple(g) for g in gens]
        degree = degree if degree is not None else len(perms[0])
    return block_system_witness(perms, degree, limit) is None
