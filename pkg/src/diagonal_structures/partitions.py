"""Partitions of the finite ground set ``{0, ..., N-1}``.

A partition is stored as a dense array of part ids.  Part ids are
canonical: part ``k`` is the part whose smallest element is the ``k``-th
smallest among the minima of all parts.  Two partitions are equal exactly
when their label arrays are equal.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError, GroundSetMismatch, NotUniform


def _canonical_labels(raw) -> np.ndarray:
    if not isinstance(raw, np.ndarray):
        raw = list(raw)
        if all(isinstance(k, (int, np.integer)) for k in raw):
            raw = np.asarray(raw, dtype=np.int64)
    if isinstance(raw, np.ndarray) and raw.dtype.kind in "iub":
        if raw.ndim != 1:
            raise ValueError("partition labels must be one-dimensional")
        if raw.size == 0:
            raise ValueError("ground set must be non-empty")
        _, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
        rank = np.empty(len(first), dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(len(first))
        return rank[inverse.reshape(-1)]
    if len(raw) == 0:
        raise ValueError("ground set must be non-empty")
    seen: dict = {}
    out = np.empty(len(raw), dtype=np.int64)
    for i, key in enumerate(raw):
        out[i] = seen.setdefault(key, len(seen))
    return out


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, count: int):
        self.parent = list(range(count))
        self.size = [1] * count

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


class Partition:
    """An immutable partition of ``{0, ..., N-1}``.

    Build one from any sequence of hashable keys, one per element; elements
    with equal keys share a part.  ``Partition.from_parts`` accepts an
    explicit list of blocks instead.
    """

    __slots__ = ("_labels", "_parts", "_hash")

    def __init__(self, keys):
        labels = _canonical_labels(keys)
        labels.setflags(write=False)
        self._labels = labels
        self._parts = None
        self._hash = None

    @classmethod
    def from_parts(cls, size: int, parts: Iterable[Iterable[int]]) -> "Partition":
        labels = np.full(size, -1, dtype=np.int64)
        for k, block in enumerate(parts):
            block = list(block)
            if not block:
                raise ValueError("parts must be non-empty")
            for x in block:
                if not 0 <= x < size:
                    raise ValueError(f"element {x} outside ground set of size {size}")
                if labels[x] != -1:
                    raise ValueError(f"element {x} lies in two parts")
                labels[x] = k
        if (labels == -1).any():
            missing = int(np.flatnonzero(labels == -1)[0])
            raise ValueError(f"element {missing} lies in no part")
        return cls(labels)

    @property
    def size(self) -> int:
        return int(self._labels.shape[0])

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def num_parts(self) -> int:
        return int(self._labels.max()) + 1

    def __len__(self) -> int:
        return self.num_parts

    def part_of(self, x: int) -> int:
        return int(self._labels[x])

    @property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        if self._parts is None:
            order = np.argsort(self._labels, kind="stable")
            bounds = np.cumsum(np.bincount(self._labels))[:-1]
            self._parts = tuple(tuple(int(x) for x in block) for block in np.split(order, bounds))
        return self._parts

    def part_sizes(self) -> np.ndarray:
        return np.bincount(self._labels)

    def block(self, x: int) -> tuple[int, ...]:
        return self.parts[self.part_of(x)]

    def relabel(self, perm: Sequence[int]) -> "Partition":
        """Image of the partition under the element bijection ``x -> perm[x]``."""
        perm = np.asarray(perm)
        new = np.empty_like(self._labels)
        new[perm] = self._labels
        return Partition(new)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self._labels, other._labels)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._labels.tobytes())
        return self._hash

    def __repr__(self) -> str:
        if self.size <= 24:
            body = "|".join(",".join(map(str, block)) for block in self.parts)
            return f"Partition({body})"
        return f"Partition(N={self.size}, parts={self.num_parts})"


def _check_same_ground(*ps: Partition) -> None:
    sizes = {p.size for p in ps}
    if len(sizes) > 1:
        raise GroundSetMismatch(f"partitions on ground sets of sizes {sorted(sizes)}")


def trivial_partitions(size: int) -> tuple[Partition, Partition]:
    """Return ``(E, U)``: the partition into singletons and the one-part partition."""
    if size < 1:
        raise ValueError("ground set must have at least one element")
    return Partition(np.arange(size)), Partition(np.zeros(size, dtype=np.int64))


def is_refinement(p: Partition, q: Partition) -> bool:
    """True when every part of ``p`` lies inside a part of ``q``."""
    _check_same_ground(p, q)
    # p refines q iff the p-label determines the q-label
    image = np.full(p.num_parts, -1, dtype=np.int64)
    image[p.labels] = q.labels
    return bool(np.array_equal(image[p.labels], q.labels))


def meet(p: Partition, q: Partition) -> Partition:
    """Infimum: the parts are the non-empty intersections of parts."""
    _check_same_ground(p, q)
    return Partition(p.labels * q.num_parts + q.labels)


def meet_all(ps: Sequence[Partition]) -> Partition:
    return reduce(meet, ps)


def join(p: Partition, q: Partition) -> Partition:
    """Supremum, via union-find on the parts of ``p`` and ``q``."""
    _check_same_ground(p, q)
    offset = p.num_parts
    dsu = DisjointSet(offset + q.num_parts)
    pairs = np.unique(p.labels * q.num_parts + q.labels)
    for code in pairs.tolist():
        a, b = divmod(code, q.num_parts)
        dsu.union(a, offset + b)
    roots = np.array([dsu.find(a) for a in range(offset)], dtype=np.int64)
    return Partition(roots[p.labels])


def join_all(ps: Sequence[Partition]) -> Partition:
    return reduce(join, ps)


def is_uniform(p: Partition) -> bool:
    sizes = p.part_sizes()
    return bool((sizes == sizes[0]).all())


def relations_commute(p: Partition, q: Partition) -> bool:
    """Whether the equivalence relations of ``p`` and ``q`` commute.

    Uses the criterion: ``p[a] & q[b]`` is non-empty iff ``q[a] & p[b]`` is.
    Only the pairs ``(p-part, q-part)`` that actually occur matter, so the
    test runs over pairs of occurring label pairs.
    """
    _check_same_ground(p, q)
    occurring = set(zip(p.labels.tolist(), q.labels.tolist()))
    for a1, b1 in occurring:
        for a2, b2 in occurring:
            if ((a1, b2) in occurring) != ((a2, b1) in occurring):
                return False
    return True


def are_compatible(p: Partition, q: Partition) -> bool:
    """Compatibility of two uniform partitions: commuting relations and uniform meet."""
    _check_same_ground(p, q)
    for name, part in (("first", p), ("second", q)):
        if not is_uniform(part):
            raise NotUniform(f"{name} partition is not uniform", witness=part)
    return relations_commute(p, q) and is_uniform(meet(p, q))


def restrict(p: Partition, subset: Sequence[int]) -> Partition:
    """Restriction of ``p`` to ``subset``, as a partition of ``{0..len(subset)-1}``."""
    return Partition(p.labels[np.asarray(subset, dtype=np.int64)])


# --- text format ----------------------------------------------------------

def format_partition(p: Partition) -> str:
    return f"{p.size}\n{' '.join(map(str, p.labels.tolist()))}\n"


def parse_partition(text: str) -> Partition:
    tokens = text.split()
    if not tokens:
        raise FormatError("empty partition file")
    try:
        size = int(tokens[0])
    except ValueError:
        raise FormatError(f"first token must be the ground-set size, got {tokens[0]!r}")
    ids = tokens[1:]
    if len(ids) != size:
        raise FormatError(f"expected {size} part ids, found {len(ids)}")
    return Partition(ids)


def load_partition(path) -> Partition:
    with open(path) as fh:
        return parse_partition(fh.read())


def save_partition(p: Partition, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_partition(p))
