from itertools import permutations
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vfpoly.perm import (
    DegreeMismatch,
    NotTransitive,
    OrderCapExceeded,
    Permutation,
    all_involutions,
    burnside_holds,
    canonical_form,
    commuting_involution_pair_reps,
    coset_action,
    format_cycles,
    generate,
    has_normal_sylow,
    involution_class_reps,
    is_doubly_transitive,
    is_subgroup,
    is_transitive,
    minimal_block_system_containing,
    normal_core,
    orbits,
    pair_component_type,
    parse_cycles,
    parse_generators,
    regular_action,
    simultaneous_conjugates,
)


def perms(n):
    return st.permutations(range(n)).map(lambda xs: Permutation(tuple(xs)))


def cyc(text, n):
    return parse_cycles(text, n)


class TestPermutation:
    def test_products_act_left_to_right(self):
        a, b = cyc("(1 2)", 3), cyc("(2 3)", 3)
        # first a then b: 1 -> 2 -> 3
        assert (a * b)(0) == 2
        assert (b * a)(0) == 1

    def test_cycle_io_round_trip(self):
        p = cyc("(1 3 5)(2 4)", 6)
        assert format_cycles(p) == "(1 3 5)(2 4)"
        assert format_cycles(Permutation.identity(4)) == "()"

    def test_parse_generators(self):
        gens = parse_generators("(1 2),(2 3),(3 4)")
        assert [g.degree for g in gens] == [4, 4, 4]

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            cyc("(1 2)", 2) * cyc("(1 2)", 3)

    def test_order_and_inverse(self):
        p = cyc("(1 2 3)(4 5)", 5)
        assert p.order() == 6
        assert (p * p.inverse()).is_identity()

    @given(st.integers(1, 7).flatmap(lambda n: st.tuples(perms(n), perms(n))))
    def test_conjugation_preserves_cycle_type(self, pair):
        p, g = pair
        c = p.conjugate(g)
        assert sorted(map(len, c.cycles())) == sorted(map(len, p.cycles()))


class TestGroups:
    def test_symmetric_group_orders(self):
        for n in range(1, 6):
            gens = [Permutation.identity(n)] if n == 1 else [
                cyc("(1 2)", n), Permutation(tuple(list(range(1, n)) + [0]))]
            assert generate(gens).order == factorial(n)

    def test_cap(self):
        with pytest.raises(OrderCapExceeded):
            generate([cyc("(1 2)", 5), cyc("(1 2 3 4 5)", 5)], cap=100)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 6).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)))
    def test_order_divides_factorial_and_orbits_partition(self, gens):
        G = generate(gens)
        n = G.degree
        assert factorial(n) % G.order == 0
        assert sum(len(o) for o in orbits(G)) == n

    def test_subgroup(self):
        S4 = generate([cyc("(1 2)", 4), cyc("(1 2 3 4)", 4)])
        assert is_subgroup([cyc("(1 2)(3 4)", 4)], S4)

    def test_double_transitivity(self):
        S4 = generate([cyc("(1 2)", 4), cyc("(1 2 3 4)", 4)])
        C4 = generate([cyc("(1 2 3 4)", 4)])
        assert is_doubly_transitive(S4)
        assert is_transitive(C4) and not is_doubly_transitive(C4)

    def test_regular_action_is_regular(self):
        D4 = generate([cyc("(1 2)(3 4)", 4), cyc("(2 4)", 4)])
        imgs = regular_action(D4)
        R = generate([Permutation(t) for t in imgs])
        assert R.order == D4.order == R.degree


class TestBlocks:
    def test_square_has_antipodal_blocks(self):
        D4 = generate([cyc("(1 2 3 4)", 4), cyc("(2 4)", 4)])
        bs = minimal_block_system_containing(D4, [0, 2])
        assert bs.block_size == 2 and len(bs) == 2
        for g in D4.generators:
            for block in bs.blocks:
                assert len({bs.block_of[g(x)] for x in block}) == 1

    def test_primitive(self):
        S4 = generate([cyc("(1 2)", 4), cyc("(1 2 3 4)", 4)])
        assert minimal_block_system_containing(S4, [0, 1]) is None

    def test_intransitive_rejected(self):
        with pytest.raises(NotTransitive):
            minimal_block_system_containing(generate([cyc("(1 2)", 4)]), [0, 1])


class TestCoresAndSylow:
    def test_normal_core_of_point_stabiliser_is_trivial(self):
        S4 = generate([cyc("(1 2)", 4), cyc("(1 2 3 4)", 4)])
        H = [cyc("(2 3)", 4), cyc("(2 3 4)", 4)]
        assert normal_core(S4, H).is_trivial()

    def test_normal_core_is_normal_and_inside(self):
        D4 = generate([cyc("(1 2 3 4)", 4), cyc("(2 4)", 4)])
        H = [cyc("(1 3)(2 4)", 4), cyc("(2 4)", 4)]
        N = normal_core(D4, H)
        assert N.order == 4  # index 2, so H is already normal
        assert normal_core(D4, [cyc("(2 4)", 4)]).is_trivial()
        Hg = generate(H)
        for n in N.elements:
            assert n in Hg
            for g in D4.generators:
                assert n.conjugate(g) in N

    def test_coset_action(self):
        S3 = generate([cyc("(1 2)", 3), cyc("(1 2 3)", 3)])
        imgs = coset_action(S3, generate([cyc("(1 2)", 3)]))
        assert generate(imgs).order == 6

    def test_sylow(self):
        S4 = generate([cyc("(1 2)", 4), cyc("(1 2 3 4)", 4)])
        assert not has_normal_sylow(S4, 2)
        assert has_normal_sylow(generate([cyc("(1 2 3 4 5)", 5)]), 5)

    def test_burnside_on_prime_degree_groups(self):
        n = 5
        groups = [
            generate([cyc("(1 2 3 4 5)", n)]),
            generate([cyc("(1 2 3 4 5)", n), cyc("(2 5)(3 4)", n)]),
            generate([cyc("(1 2 3 4 5)", n), cyc("(2 3 5 4)", n)]),
            generate([cyc("(1 2 3 4 5)", n), cyc("(1 2 3)", n)]),
            generate([cyc("(1 2 3 4 5)", n), cyc("(1 2)", n)]),
        ]
        for G in groups:
            assert is_transitive(G) and burnside_holds(G)


class TestInvolutions:
    @pytest.mark.parametrize("n, count", [(1, 0), (2, 1), (4, 9), (6, 75)])
    def test_involution_counts(self, n, count):
        assert len(all_involutions(n)) == count

    def test_class_reps(self):
        assert [format_cycles(p) for p in involution_class_reps(4)] == ["(1 2)", "(1 2)(3 4)"]
        assert involution_class_reps(1) == []

    def test_alternating_square_is_a_pair_rep(self):
        types = {pair_component_type(a, b) for a, b in commuting_involution_pair_reps(4)}
        assert (0, 0, 0, 0, 1) in types

    @pytest.mark.parametrize("n", range(1, 7))
    def test_pair_reps_hit_each_class_once(self, n):
        """Brute force over Sym(n): one representative per class of commuting pairs."""
        relabels = [Permutation(s) for s in permutations(range(n))]

        def klass(a, b):
            return min(tuple(c.images for c in simultaneous_conjugates((a, b), g)) for g in relabels)

        invs = all_involutions(n, include_identity=True)
        every = {klass(a, b) for a in invs for b in invs if a * b == b * a}
        reps = [klass(a, b) for a, b in commuting_involution_pair_reps(n)]
        assert len(reps) == len(set(reps))
        assert set(reps) == every


class TestCanonicalForm:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 8).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
    def test_invariant_under_relabelling(self, triple):
        a, b, g = triple
        if not is_transitive(generate([a, b])):
            return
        assert canonical_form((a, b)) == canonical_form(simultaneous_conjugates((a, b), g))

    def test_distinguishes_non_conjugate(self):
        n = 4
        x = (cyc("(1 2)", n), cyc("(2 3)", n), cyc("(3 4)", n))
        y = (cyc("(1 2)(3 4)", n), cyc("(2 3)", n), cyc("(3 4)", n))
        assert canonical_form(x) != canonical_form(y)

    def test_requires_transitivity(self):
        with pytest.raises(NotTransitive):
            canonical_form((cyc("(1 2)", 4),))

    def test_form_is_realised_by_a_relabelling(self):
        x = (cyc("(1 2)", 4), cyc("(2 3)", 4), cyc("(3 4)", 4))
        form = canonical_form(x)
        assert any(tuple(g.images for g in simultaneous_conjugates(x, Permutation(s))) == form
                   for s in permutations(range(4)))


def test_numpy_dtype_small():
    G = generate([cyc("(1 2)", 3)])
    assert G.element_array.dtype.itemsize <= np.dtype(np.int16).itemsize
