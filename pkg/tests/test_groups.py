import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bundled_group
from helpers import latin_squares
from diagonal_structures.errors import FormatError, NotGroup, NotGroupIsotopic, NotLatin, NotSubgroup
from diagonal_structures.groups import (
    CayleyTable,
    Group,
    Subgroup,
    all_subgroups,
    alternating_group,
    are_isomorphic,
    automorphisms,
    characteristic_subgroup_witness,
    closure,
    complete_mappings,
    coset_lattice_check,
    coset_partition,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    elementary_abelian_prime,
    format_group,
    greedy_generators,
    group_from_quasigroup,
    hall_paige_predicate,
    is_characteristically_simple,
    is_complete_mapping,
    parse_group,
    product_set,
    quadrangle_counterexample,
    quadrangle_criterion,
    small_group_catalog,
    sylow_two_subgroup,
    symmetric_group,
    validate_quasigroup,
)
from diagonal_structures.partitions import is_refinement, relations_commute

# order-5 Latin square found by random search; not isotopic to C5
NON_GROUP_5 = [[0, 1, 2, 3, 4], [4, 2, 3, 1, 0], [1, 3, 4, 0, 2], [2, 0, 1, 4, 3], [3, 4, 0, 2, 1]]

# transversal counts of the cyclic Latin squares of orders 3, 5, 7
CYCLIC_COMPLETE_MAPPINGS = {3: 3, 5: 15, 7: 133}


def c5_isotopes():
    n = 5
    perms = list(itertools.permutations(range(n)))
    out = set()
    for r in perms:
        for c in perms:
            rows = [[(r[i] + c[j]) % n for j in range(n)] for i in range(n)]
            out.add(normalise(rows))
    return out


def normalise(rows):
    m = {v: k for k, v in enumerate(rows[0])}
    return tuple(tuple(m[x] for x in row) for row in rows)


def brute_force_automorphisms(g):
    others = [x for x in range(g.n) if x != g.identity]
    out = []
    for images in itertools.permutations(others):
        f = [0] * g.n
        f[g.identity] = g.identity
        for x, y in zip(others, images):
            f[x] = y
        if all(f[g.mul[a][b]] == g.mul[f[a]][f[b]] for a in range(g.n) for b in range(g.n)):
            out.append(tuple(f))
    return sorted(out)


def brute_force_complete_mappings(g):
    return sum(1 for phi in itertools.permutations(range(g.n)) if is_complete_mapping(g, phi))


class TestTables:
    def test_validate_quasigroup_symbols_first_seen(self):
        t = validate_quasigroup([["b", "a"], ["a", "b"]])
        assert t.symbols == ("b", "a")
        assert t.table == ((0, 1), (1, 0))

    @pytest.mark.parametrize("raw,kind", [
        ([["a", "a"], ["b", "b"]], "row"),
        ([["a", "b"], ["a", "b"]], "column"),
        ([["a", "b"], ["b"]], "shape"),
        ([["a", "b", "c"], ["b", "c", "a"], ["c", "a", "d"]], "alphabet"),
    ])
    def test_not_latin_witness(self, raw, kind):
        with pytest.raises(NotLatin) as exc:
            validate_quasigroup(raw)
        assert exc.value.witness[0] == kind

    def test_latin_but_not_group(self):
        with pytest.raises(NotGroup):
            Group(CayleyTable(tuple(range(5)), tuple(map(tuple, NON_GROUP_5))))

    def test_text_round_trip(self):
        for g in small_group_catalog(8):
            h = parse_group(format_group(g))
            assert h.symbols[h.identity] == g.symbols[g.identity]
            assert are_isomorphic(g, h) is not None

    def test_parse_errors(self):
        with pytest.raises(FormatError):
            parse_group("")
        with pytest.raises(FormatError):
            parse_group("x\n0 1\n1 0\n")

    def test_bundled_groups_load(self):
        orders = {"c2": 2, "c3": 3, "c4": 4, "c2xc2": 4, "c5": 5, "c6": 6, "s3": 6,
                  "c2xc2xc2": 8, "q8": 8, "d4": 8}
        for name, n in orders.items():
            g = bundled_group(name)
            assert g.order == n and g.name == name


class TestConstructions:
    def test_orders_and_names(self):
        assert cyclic_group(7).order == 7
        assert dihedral_group(4).order == 8 and dihedral_group(4).name == "D8"
        assert dicyclic_group(2).order == 8
        assert symmetric_group(4).order == 24
        assert alternating_group(4).order == 12
        assert elementary_abelian_group(3, 2).order == 9
        assert direct_product(cyclic_group(2), cyclic_group(3)).order == 6

    def test_element_orders(self):
        assert sorted(dicyclic_group(2).element_orders()) == [1, 2, 4, 4, 4, 4, 4, 4]
        assert sorted(dihedral_group(4).element_orders()) == [1, 2, 2, 2, 2, 2, 4, 4]

    def test_isomorphisms(self):
        assert are_isomorphic(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6))
        assert are_isomorphic(symmetric_group(3), dihedral_group(3))
        assert are_isomorphic(dicyclic_group(2), bundled_group("q8"))
        assert are_isomorphic(dihedral_group(4), bundled_group("d4"))
        assert are_isomorphic(dihedral_group(4), dicyclic_group(2)) is None
        w = are_isomorphic(elementary_abelian_group(2, 2), bundled_group("c2xc2"))
        assert w.verify()

    def test_catalog_pairwise_distinct(self):
        cat = small_group_catalog(12)
        assert [sum(1 for g in cat if g.order == n) for n in range(2, 13)] == [1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5]
        for a, b in itertools.combinations(cat, 2):
            if a.order == b.order:
                assert are_isomorphic(a, b) is None, (a.name, b.name)

    def test_greedy_generators_generate(self):
        for g in small_group_catalog(12):
            assert len(closure(g, greedy_generators(g))) == g.order


class TestAutomorphisms:
    @pytest.mark.parametrize("g,count", [
        (cyclic_group(5), 4), (cyclic_group(8), 4), (elementary_abelian_group(2, 2), 6),
        (symmetric_group(3), 6), (dihedral_group(4), 8), (dicyclic_group(2), 24),
        (elementary_abelian_group(2, 3), 168), (cyclic_group(12), 4),
    ])
    def test_counts(self, g, count):
        assert len(automorphisms(g)) == count

    @pytest.mark.parametrize("g", [g for g in small_group_catalog(7)])
    def test_matches_brute_force(self, g):
        assert automorphisms(g) == brute_force_automorphisms(g)


class TestSubgroups:
    def test_subgroup_validation(self):
        g = cyclic_group(6)
        assert Subgroup.of(g, [0, 3]).order == 2
        with pytest.raises(NotSubgroup):
            Subgroup.of(g, [0, 1])
        with pytest.raises(NotSubgroup):
            Subgroup.of(g, [1, 5])

    def test_subgroup_counts(self):
        assert len(all_subgroups(symmetric_group(3))) == 6
        assert len(all_subgroups(elementary_abelian_group(2, 3))) == 16
        assert len(all_subgroups(dicyclic_group(2))) == 6
        assert len(all_subgroups(alternating_group(4))) == 10

    def test_coset_partition(self):
        g = symmetric_group(3)
        h = Subgroup.generated(g, [next(a for a in range(6) if g.element_orders()[a] == 2)])
        p = coset_partition(g, h)
        assert p.num_parts == 3
        for block in p.parts:
            x = block[0]
            assert set(block) == {g.mul[y][x] for y in h.elements}

    @pytest.mark.parametrize("g", [symmetric_group(3), dihedral_group(4), dicyclic_group(2),
                                   alternating_group(4), elementary_abelian_group(2, 3),
                                   direct_product(cyclic_group(2), cyclic_group(4))])
    def test_coset_lattice_and_compatibility(self, g):
        subs = [Subgroup(g, tuple(sorted(s))) for s in all_subgroups(g)]
        for h, k in itertools.combinations(subs, 2):
            r = coset_lattice_check(g, h, k)
            assert r.meet_ok and r.join_ok
            permutable = product_set(g, h.elements, k.elements) == product_set(g, k.elements, h.elements)
            assert relations_commute(r.p_h, r.p_k) == permutable
            assert is_refinement(coset_partition(g, h), r.join)


class TestCharacteristic:
    def test_characteristically_simple(self):
        for g in [cyclic_group(2), cyclic_group(5), elementary_abelian_group(2, 2),
                  elementary_abelian_group(3, 2), elementary_abelian_group(2, 3)]:
            assert is_characteristically_simple(g)
        for g in [cyclic_group(4), cyclic_group(6), symmetric_group(3), dicyclic_group(2),
                  alternating_group(4), dihedral_group(4)]:
            assert not is_characteristically_simple(g)
            assert characteristic_subgroup_witness(g) is not None

    def test_alternating_three_subgroup(self):
        g = symmetric_group(3)
        assert len(characteristic_subgroup_witness(g)) == 3

    def test_elementary_abelian_prime(self):
        assert elementary_abelian_prime(elementary_abelian_group(3, 2)) == 3
        assert elementary_abelian_prime(cyclic_group(2)) == 2
        assert elementary_abelian_prime(cyclic_group(4)) is None
        assert elementary_abelian_prime(symmetric_group(3)) is None


class TestQuasigroups:
    def test_non_group_square(self):
        t = CayleyTable(tuple(range(5)), tuple(map(tuple, NON_GROUP_5)))
        w = quadrangle_counterexample(t)
        assert w is not None
        i1, i2, j1, j2, i1p, i2p, j1p, j2p = w
        a = NON_GROUP_5
        assert a[i1][j1] == a[i1p][j1p] and a[i1][j2] == a[i1p][j2p] and a[i2][j1] == a[i2p][j1p]
        assert a[i2][j2] != a[i2p][j2p]
        with pytest.raises(NotGroupIsotopic):
            group_from_quasigroup(t)

    @pytest.mark.parametrize("g", small_group_catalog(8))
    def test_isotopes_recover_group(self, g):
        rng = np.random.default_rng(g.order)
        for _ in range(3):
            r, c, s = (rng.permutation(g.n) for _ in range(3))
            raw = [[f"x{s[g.mul[r[i]][c[j]]]}" for j in range(g.n)] for i in range(g.n)]
            t = validate_quasigroup(raw)
            assert quadrangle_criterion(t)
            assert are_isomorphic(group_from_quasigroup(t), g) is not None


_C5_ISOTOPES = None


@settings(max_examples=150, deadline=None)
@given(latin_squares(5))
def test_quadrangle_matches_isotope_oracle(rows):
    global _C5_ISOTOPES
    if _C5_ISOTOPES is None:
        _C5_ISOTOPES = c5_isotopes()
    t = validate_quasigroup(rows)
    assert quadrangle_criterion(t) == (normalise(rows) in _C5_ISOTOPES)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(latin_squares))
def test_group_from_quasigroup_is_isotopic(rows):
    t = validate_quasigroup(rows)
    try:
        g = group_from_quasigroup(t)
    except NotGroupIsotopic:
        assert not quadrangle_criterion(t)
        return
    # rows and columns of the square are group elements after relabelling
    n = len(rows)
    a = t.as_array()
    row_of = [a[i][0] for i in range(n)]
    col_of = [a[0][j] for j in range(n)]
    for i in range(n):
        for j in range(n):
            assert g.mul[row_of[i]][col_of[j]] == a[i][j]


class TestCompleteMappings:
    @pytest.mark.parametrize("n,count", sorted(CYCLIC_COMPLETE_MAPPINGS.items()))
    def test_cyclic_counts(self, n, count):
        assert complete_mappings(cyclic_group(n), count_only=True) == count

    def test_klein_and_even_cyclic(self):
        assert complete_mappings(elementary_abelian_group(2, 2), count_only=True) == 8
        assert complete_mappings(cyclic_group(4), count_only=True) == 0
        assert complete_mappings(cyclic_group(6)) is None

    @pytest.mark.parametrize("g", small_group_catalog(7) + [elementary_abelian_group(2, 3)])
    def test_count_matches_brute_force(self, g):
        assert complete_mappings(g, count_only=True) == brute_force_complete_mappings(g)

    def test_found_mapping_is_complete(self):
        for g in small_group_catalog(12):
            phi = complete_mappings(g)
            assert phi is None or is_complete_mapping(g, phi)

    def test_sylow_two_subgroup_orders(self):
        for g in small_group_catalog(12):
            p = sylow_two_subgroup(g)
            two_part = g.order // math.gcd(g.order, 3 ** 5 * 5 ** 5 * 7 ** 5 * 11 ** 5)
            assert len(p) == two_part, g.name

    def test_hall_paige_values(self):
        assert hall_paige_predicate(cyclic_group(7))
        assert not hall_paige_predicate(symmetric_group(3))
        assert hall_paige_predicate(dicyclic_group(2))
        assert not hall_paige_predicate(cyclic_group(8))
        assert not hall_paige_predicate(dicyclic_group(3))
        assert hall_paige_predicate(alternating_group(4))
