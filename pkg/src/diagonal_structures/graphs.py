"""Small undirected simple graphs on ``{0, ..., n-1}`` and exact colouring."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

from .errors import SizeLimitExceeded

CHROMATIC_LIMIT = 64


class SimpleGraph:
    """Loopless undirected graph stored as sorted adjacency tuples."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        nbrs: list[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = [tuple(sorted(s)) for s in nbrs]
        self._sets = nbrs

    @property
    def num_vertices(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def neighbor_set(self, v: int) -> set:
        return self._sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edges(self):
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset:
        return frozenset(self.edges())

    def common_neighbors(self, u: int, v: int) -> set:
        return self._sets[u] & self._sets[v]

    def bfs(self, source: int) -> list[int]:
        """Distances from ``source``; unreachable vertices get ``-1``."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            d = dist[x] + 1
            for y in self.adj[x]:
                if dist[y] < 0:
                    dist[y] = d
                    queue.append(y)
        return dist

    def is_connected(self) -> bool:
        return self.n == 0 or min(self.bfs(0)) >= 0

    def complement(self) -> "SimpleGraph":
        return SimpleGraph(self.n, ((u, v) for u in range(self.n) for v in range(u + 1, self.n)
                                    if v not in self._sets[u]))

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        pos = {v: k for k, v in enumerate(vertices)}
        return SimpleGraph(len(vertices), ((pos[u], pos[v]) for u in vertices for v in self.adj[u]
                                           if v in pos and u < v))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(vs[j] in self._sets[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def is_proper_coloring(self, colors: Sequence[int]) -> bool:
        return all(colors[u] != colors[v] for u, v in self.edges())

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.num_edges})"


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_multipartite(sizes: Sequence[int]) -> SimpleGraph:
    part = [k for k, s in enumerate(sizes) for _ in range(s)]
    n = len(part)
    return SimpleGraph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]))


def srg_parameters(g: SimpleGraph) -> Optional[tuple[int, int, int, int]]:
    """``(n, k, lambda, mu)`` if ``g`` is strongly regular, else ``None``."""
    degs = set(g.degrees())
    if len(degs) != 1:
        return None
    k = degs.pop()
    lam, mu = set(), set()
    for u in range(g.n):
        su = g.neighbor_set(u)
        for v in range(u + 1, g.n):
            c = len(su & g.neighbor_set(v))
            (lam if v in su else mu).add(c)
    if len(lam) > 1 or len(mu) > 1:
        return None
    return (g.n, k, lam.pop() if lam else 0, mu.pop() if mu else 0)


def greedy_clique(g: SimpleGraph) -> list[int]:
    """A maximal clique grown greedily from the highest-degree vertex."""
    if g.n == 0:
        return []
    best: list[int] = []
    for start in range(g.n):
        clique = [start]
        cand = set(g.neighbor_set(start))
        while cand:
            v = max(cand, key=lambda x: (len(cand & g.neighbor_set(x)), -x))
            clique.append(v)
            cand &= g.neighbor_set(v)
        if len(clique) > len(best):
            best = clique
    return best


def chromatic_number_exact(g: SimpleGraph, limit: int = CHROMATIC_LIMIT,
                           return_coloring: bool = False):
    """Exact chromatic number by DSATUR branch and bound with a clique lower bound."""
    n = g.n
    if n > limit:
        raise SizeLimitExceeded("exact colouring", n, limit)
    if n == 0:
        return (0, []) if return_coloring else 0
    nbrs = [list(a) for a in g.adj]
    clique = greedy_clique(g)
    lower = len(clique)

    # greedy DSATUR upper bound
    best_colors = _dsatur_greedy(nbrs)
    best = max(best_colors) + 1

    colors = [-1] * n
    # precolour the clique: fixes colour symmetry
    for c, v in enumerate(clique):
        colors[v] = c

    def choose() -> int:
        pick, key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[w] for w in nbrs[v] if colors[w] >= 0})
            k = (sat, len(nbrs[v]), -v)
            if key is None or k > key:
                pick, key = v, k
        return pick

    def rec(used: int) -> bool:
        nonlocal best, best_colors
        if best == lower:
            return True
        v = choose()
        if v < 0:
            if used < best:
                best = used
                best_colors = colors[:]
            return best == lower
        forbidden = {colors[w] for w in nbrs[v] if colors[w] >= 0}
        for c in range(min(used + 1, best - 1)):
            if c in forbidden:
                continue
            colors[v] = c
            if rec(max(used, c + 1)):
                colors[v] = -1
                return True
            colors[v] = -1
        return False

    if best > lower:
        rec(lower)
    if return_coloring:
        return best, best_colors
    return best


def _dsatur_greedy(nbrs: list[list[int]]) -> list[int]:
    n = len(nbrs)
    colors = [-1] * n
    for _ in range(n):
        pick, key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            k = (len({colors[w] for w in nbrs[v] if colors[w] >= 0}), len(nbrs[v]), -v)
            if key is None or k > key:
                pick, key = v, k
        forbidden = {colors[w] for w in nbrs[pick]}
        c = 0
        while c in forbidden:
            c += 1
        colors[pick] = c
    return colors
