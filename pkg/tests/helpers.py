"""Random squares and cubes shared by the test modules."""

import itertools

import numpy as np
from hypothesis import strategies as st

from diagonal_structures.cartesian import MixedRadix
from diagonal_structures.latin import LatinCube, cube_from_group, letter_names, relabel_cube
from diagonal_structures.partitions import Partition


def random_relabel(c, rng):
    n = c.n
    perms = [rng.permutation(n) for _ in range(3)]
    return relabel_cube(c, *perms, letter_perm=rng.permutation(c.letters.num_parts))


def random_group_cube(t, rng):
    return random_relabel(cube_from_group(t), rng)


def intercalates(table):
    n = len(table)
    out = []
    for i, k in itertools.combinations(range(n), 2):
        for j, l in itertools.combinations(range(n), 2):
            if table[i][j] == table[k][l] and table[i][l] == table[k][j]:
                out.append((i, k, j, l))
    return out


def two_square_cube(f, g):
    """Cell ``(i, j, k)`` gets the letter ``(f[i][j], g[i][k])``; always an LC2 cube."""
    n = len(f)
    codec = MixedRadix((n, n, n))
    d = codec.digits()
    f, g = np.asarray(f), np.asarray(g)
    key = f[d[:, 0], d[:, 1]] * n + g[d[:, 0], d[:, 2]]
    letters = Partition(key)
    return LatinCube(n, Partition(d[:, 0]), Partition(d[:, 1]), Partition(d[:, 2]), letters,
                     tuple(letter_names(letters.num_parts)))


def perturbed_cube(t, rng):
    """Pair the Cayley table with a copy that has one intercalate swapped."""
    f = [list(r) for r in t.mul]
    g = [list(r) for r in t.mul]
    i, k, j, l = intercalates(f)[rng.integers(len(intercalates(f)))]
    g[i][j], g[i][l] = g[i][l], g[i][j]
    g[k][j], g[k][l] = g[k][l], g[k][j]
    return random_relabel(two_square_cube(f, g), rng)


@st.composite
def latin_squares(draw, n):
    """Random Latin square: cell-by-cell backtracking with drawn symbol orders."""
    order = [draw(st.permutations(range(n))) for _ in range(n)]
    rows = [[None] * n for _ in range(n)]

    def fill(cell):
        if cell == n * n:
            return True
        i, j = divmod(cell, n)
        for x in order[i]:
            if x in rows[i][:j] or any(rows[k][j] == x for k in range(i)):
                continue
            rows[i][j] = x
            if fill(cell + 1):
                return True
        rows[i][j] = None
        return False

    fill(0)
    return rows
