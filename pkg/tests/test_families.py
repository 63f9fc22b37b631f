import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vfpoly import families as fam
from vfpoly.families import (
    FlatVerdict,
    LambdaParams,
    flat_family_catalog,
    flat_orientable_predicate,
    lambda_group,
    lambda_oracle,
    lambda_presentation,
    table6_universal_check,
    toroidal_44,
)
from vfpoly.fp import Presentation, Word, group_order
from vfpoly.polyhedron import from_presentation, iso_as_polyhedra, try_polyhedron


def types(catalog):
    return [(P.invariants.type, P.order) for P in catalog]


class TestLambda:
    def test_exponents_reduced(self):
        params = LambdaParams(5, 10, -1, -3)
        assert (params.i, params.j) == (4, 7)

    def test_small_parameters_rejected(self):
        with pytest.raises(ValueError):
            LambdaParams(1, 3, 0, 0)

    def test_verdict_witness_consistency(self):
        with pytest.raises(ValueError):
            FlatVerdict(True, None)
        assert not FlatVerdict(False)

    def test_six_three(self):
        G = lambda_group(LambdaParams(6, 3, 3, 1))
        P = try_polyhedron(*G.generators)
        assert P.order == 36 and P.invariants.flat and P.invariants.type == (6, 3)

    def test_five_ten(self):
        P = from_presentation(lambda_presentation(LambdaParams(5, 10, -1, -3)))
        assert P.order == 100 and P.invariants.flat

    def test_collapse(self):
        params = LambdaParams(3, 3, 0, 0)
        assert lambda_group(params).order < 18
        assert not flat_orientable_predicate(params)

    @pytest.mark.parametrize("params, expect", [
        (LambdaParams(14, 7, 3, 1), True),
        (LambdaParams(5, 10, -1, -3), True),
        (LambdaParams(5, 5, 2, 2), False),
    ])
    def test_predicate_examples(self, params, expect):
        verdict = flat_orientable_predicate(params)
        assert bool(verdict) is expect
        assert lambda_oracle(params) is expect

    @settings(max_examples=60, deadline=None)
    @given(st.integers(3, 12), st.integers(3, 12), st.integers(0, 11), st.integers(0, 11))
    def test_predicate_matches_oracle(self, p, q, i, j):
        params = LambdaParams(p, q, i, j)
        assert bool(flat_orientable_predicate(params)) == lambda_oracle(params)

    def test_b_two_b_relation_equivalence(self):
        # (r0 r1 r2 r1 r2)^2 = 1 on [b, 2b] gives the same group as the Lambda presentation
        for b in (3, 5, 7):
            A = from_presentation(Presentation(b, 2 * b, (Word((0, 1, 2, 1, 2) * 2),)))
            B = from_presentation(lambda_presentation(LambdaParams(b, 2 * b, -1, -3)))
            assert A.order == B.order == 4 * b * b
            assert iso_as_polyhedra(A, B)


class TestNamed:
    @pytest.mark.parametrize("ctor, typ, order", [
        (fam.tetrahedron, (3, 3), 24), (fam.octahedron, (3, 4), 48), (fam.cube, (4, 3), 48),
        (fam.hemicube, (4, 3), 24), (fam.hemi_octahedron, (3, 4), 24),
        (fam.icosahedron, (3, 5), 120), (fam.hemi_icosahedron, (3, 5), 60),
        (fam.hemi_dodecahedron, (5, 3), 60), (fam.triangular_torus_20, (3, 6), 48),
        (fam.triangular_torus_20_double, (3, 12), 96),
    ])
    def test_type_and_order(self, ctor, typ, order):
        P = ctor()
        assert P.invariants.type == typ and P.order == order

    def test_torus_three_zero(self):
        P = toroidal_44(3, (3, 0))
        assert P.order == 72 and P.invariants.v == 9 and P.invariants.h == 3

    def test_torus_two_two(self):
        P = toroidal_44(2, (2, 2))
        assert P.order == 64 and P.invariants.v == 8

    @pytest.mark.parametrize("s", [2, 3, 4])
    def test_torus_vertex_counts(self, s):
        assert toroidal_44(s, (s, 0)).invariants.v == s * s
        assert toroidal_44(s, (s, s)).invariants.v == 2 * s * s

    def test_torus_petrie_encoding(self):
        for s in (2, 3):
            A = from_presentation(Presentation(4, 4, (Word((0, 1, 2) * (2 * s)),)))
            assert iso_as_polyhedra(A, toroidal_44(s, (s, s)))

    def test_torus_errors(self):
        with pytest.raises(ValueError):
            toroidal_44(1, (1, 0))
        with pytest.raises(ValueError):
            toroidal_44(3, (3, 1))


class TestCatalogs:
    def test_prime(self):
        assert types(flat_family_catalog(5, 12)) == [((5, 2), 20), ((5, 10), 100)]

    def test_four_vertices(self):
        cat = flat_family_catalog(4, 8)
        assert all(P.invariants.v == 4 and P.invariants.flat for P in cat)
        assert any(iso_as_polyhedra(P, fam.hemicube()) for P in cat if P.order == 24)

    def test_b_squared(self):
        cat = flat_family_catalog(9, 18)
        assert types(cat) == [((9, 2), 36), ((9, 4), 72), ((9, 6), 108), ((9, 18), 324)]
        orient = {P.invariants.type: P.invariants.orientable for P in cat}
        assert orient == {(9, 2): True, (9, 4): False, (9, 6): True, (9, 18): True}

    def test_twice_prime_faithful_rows(self):
        cat = flat_family_catalog(14, 14)
        faithful = [P.invariants.type for P in cat if P.invariants.vertex_faithful]
        assert faithful == [(14, 7)]

    def test_six_four_second_relation_is_redundant(self):
        first = fam.relation(fam.s2(-1) + fam.s1(1), fam.s1(2) + fam.R1 + fam.s2(2))
        second = fam.relation(fam.s2(-1) + fam.s1(2), fam.s1(-2) + fam.s2(1))
        both = group_order(Presentation(6, 4, (first, second)))
        assert both == group_order(Presentation(6, 4, (first,))) == 48

    def test_unsupported_shape(self):
        with pytest.raises(ValueError):
            flat_family_catalog(12, 6)


class TestUniversal:
    @pytest.mark.parametrize("row, expect", [
        (dict(p=3, q=3, order=24, z1=4, h=3, z2=4), True),
        (dict(p=4, q=6, order=72, z1=4, h=6, z2=6), False),
        (dict(p=6, q=3, order=36, z1=6, h=6, z2=6), False),
    ])
    def test_rows(self, row, expect):
        assert table6_universal_check(row) is expect
