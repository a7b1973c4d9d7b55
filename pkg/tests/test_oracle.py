import itertools

import numpy as np
import pytest

from idealgraph import oracle as orc
from idealgraph.errors import DomainError, ResourceLimitError
from idealgraph.ring_core import factor, is_idempotent


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def members(ideal):
    return set(ideal.members)


class TestRings:
    def test_zmod_sizes(self):
        assert orc.make_zmod(12).size == 12
        assert len(orc.all_ideals(orc.make_zmod(20))) == 6
        z2 = orc.make_zmod(2)
        assert z2.size == 2 and len(orc.all_ideals(z2)) == 2

    @pytest.mark.parametrize("n", [1, 0, 10_001])
    def test_zmod_cap(self, n):
        with pytest.raises(ResourceLimitError):
            orc.make_zmod(n)

    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_local_square_zero_axioms(self, q):
        orc.make_local_square_zero(q).self_test()

    @pytest.mark.parametrize("n", [2, 6, 12, 27, 60])
    def test_zmod_axioms(self, n):
        orc.make_zmod(n).self_test()

    def test_self_test_catches_broken_ring(self):
        add = (np.arange(4)[:, None] + np.arange(4)[None, :]) % 4
        mul = (np.arange(4)[:, None] * np.arange(4)[None, :]) % 4
        mul[2, 3] = 1
        with pytest.raises(DomainError, match="commutative"):
            orc.ExplicitRing.from_tables(add, mul, "broken").self_test()
        mul[3, 2] = 1
        with pytest.raises(DomainError):
            orc.ExplicitRing.from_tables(add, mul, "broken").self_test()

    def test_table_ring_matches_implicit(self):
        z = orc.make_zmod(15)
        t = orc.ExplicitRing.from_tables(z.add_table(), z.mul_table(), "Z_15 tables")
        t.self_test()
        assert [i.members for i in orc.all_ideals(t)] == [i.members for i in orc.all_ideals(z)]

    def test_local_square_zero_domain(self):
        for q in (4, 1, 37):
            with pytest.raises(DomainError):
                orc.make_local_square_zero(q)

    def test_local_square_zero_ideals(self):
        r = orc.make_local_square_zero(2)
        assert r.size == 8
        ideals = orc.all_ideals(r)
        assert len(ideals) == 6
        nontrivial = [i for i in ideals if not i.is_trivial]
        sizes = sorted(len(i) for i in nontrivial)
        # three lines of size q and the maximal ideal of size q^2
        assert sizes == [2, 2, 2, 4]

    def test_local_square_zero_q3_lines(self):
        ideals = orc.all_ideals(orc.make_local_square_zero(3))
        assert sum(len(i) == 3 for i in ideals) == 4

    def test_maximal_ideal_squares_to_zero(self):
        r = orc.make_local_square_zero(2)
        m = max((i for i in orc.all_ideals(r) if not i.is_trivial), key=len)
        assert orc.set_product(m, m).is_zero
        assert m.label() == "<x,y>"


class TestIdeals:
    def test_principal(self):
        z12 = orc.make_zmod(12)
        assert members(orc.principal_ideal(z12, 8)) == {0, 4, 8}
        assert members(orc.principal_ideal(z12, 0)) == {0}
        assert members(orc.principal_ideal(orc.make_zmod(20), 5)) == {0, 5, 10, 15}

    def test_all_ideals_counts(self):
        assert len(orc.all_ideals(orc.make_zmod(12))) == 6
        assert len(orc.all_ideals(orc.make_zmod(13))) == 2

    def test_all_ideals_are_ideals(self):
        for ring in (orc.make_zmod(36), orc.make_local_square_zero(3)):
            for i in orc.all_ideals(ring):
                i.validate()

    def test_validate_rejects_non_ideal(self):
        z = orc.make_zmod(12)
        with pytest.raises(DomainError):
            orc.ElementIdeal(z, (0, 1)).validate()
        with pytest.raises(DomainError):
            orc.ElementIdeal(z, (0, 6, 7)).validate()

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            orc.all_ideals(orc.make_zmod(3000), cap=2000)

    def test_product_and_intersection(self):
        z12 = orc.make_zmod(12)
        two, six = orc.principal_ideal(z12, 2), orc.principal_ideal(z12, 6)
        assert members(orc.set_product(two, six)) == {0}
        assert members(orc.set_intersect(two, six)) == {0, 6}
        whole = orc.principal_ideal(z12, 1)
        for i in orc.all_ideals(z12):
            assert orc.set_product(i, whole) == i
        z20 = orc.make_zmod(20)
        a, b = orc.principal_ideal(z20, 2), orc.principal_ideal(z20, 5)
        assert members(orc.set_product(a, b)) == {0, 10} == members(orc.set_intersect(a, b))

    def test_ring_mismatch(self):
        a = orc.principal_ideal(orc.make_zmod(12), 2)
        b = orc.principal_ideal(orc.make_zmod(12), 2)
        with pytest.raises(DomainError):
            orc.set_product(a, b)
        with pytest.raises(DomainError):
            orc.oracle_adjacent(a, b)

    def test_adjacency_examples(self):
        z36 = orc.make_zmod(36)
        p = lambda a: orc.principal_ideal(z36, a)  # noqa: E731
        assert orc.oracle_adjacent(p(6), p(4))
        assert not orc.oracle_adjacent(p(6), p(2))
        z12 = orc.make_zmod(12)
        assert not orc.oracle_adjacent(orc.principal_ideal(z12, 2), orc.principal_ideal(z12, 6))

    def test_idempotent_generator(self):
        z36 = orc.make_zmod(36)
        assert orc.idempotent_generator(z36, orc.principal_ideal(z36, 4)) == 28
        assert 28 * 28 % 36 == 28
        assert orc.idempotent_generator(z36, orc.principal_ideal(z36, 0)) == 0
        assert orc.idempotent_generator(z36, orc.principal_ideal(z36, 6)) is None

    def test_idempotents_mod_36(self):
        assert orc.idempotents(orc.make_zmod(36)) == [0, 1, 9, 28]

    def test_nilpotent(self):
        z36 = orc.make_zmod(36)
        assert [a for a in range(36) if orc.is_nilpotent(z36, a)] == [0, 6, 12, 18, 24, 30]


def test_divisor_bijection_and_idempotent_generators():
    for n in range(2, 401):
        zr = orc.make_zmod(n)
        ideals = orc.all_ideals(zr)
        assert sorted(orc.zmod_divisor(i) for i in ideals) == divisors(n)
        ring = factor(n)
        for i in ideals:
            d = orc.zmod_divisor(i)
            assert i == orc.principal_ideal(zr, d % n)
            has_gen = orc.idempotent_generator(zr, i) is not None
            assert has_gen == is_idempotent(ring.ideal_of_divisor(d)), (n, d)


def test_oracle_graph_of_local_ring_labels():
    g = orc.oracle_graph(orc.make_local_square_zero(2))
    assert sorted(map(str, g.vertices)) == ["<x+y>", "<x,y>", "<x>", "<y>"]
    assert g.adj[g.index("<x,y>")] == 0


def test_oracle_graph_gamma1_loops_z12():
    g = orc.oracle_graph(orc.make_zmod(12), kind="gamma1")
    looped = sorted(g.vertices[i].divisor for i in g.loops)
    assert looped == [1, 3, 4, 12]
    everyone = (1 << len(g)) - 1
    for d in (1, 12):
        i = g.index(d)
        assert g.adj[i] | 1 << i == everyone


@pytest.mark.parametrize("n", [36, 60, 64, 90])
def test_oracle_edges_match_brute_set_rule(n):
    zr = orc.make_zmod(n)
    ideals = orc.all_ideals(zr)
    edges, loops = orc.oracle_edges(ideals)
    for a, b in itertools.combinations(range(len(ideals)), 2):
        prod = orc.set_product(ideals[a], ideals[b]).members
        inter = orc.set_intersect(ideals[a], ideals[b]).members
        assert ((a, b) in edges) == (prod == inter)
