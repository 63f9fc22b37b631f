import pytest

from vfpoly import families as fam
from vfpoly.fp import Presentation, Word
from vfpoly.perm import Permutation, generate, parse_generators
from vfpoly.polyhedron import (
    CoverPreconditionError,
    DegenerateType,
    IntersectionConditionFailed,
    NotInvolution,
    OuterPairNotCommuting,
    PolyhedronError,
    covers,
    fixed_vertices_of_power,
    from_generators,
    from_presentation,
    iso_as_polyhedra,
    satisfies_relation1,
    try_polyhedron,
    verify_vf_cover_relations,
    vertex_action,
    vertex_triple,
)


def gens(text):
    return parse_generators(text)


class TestAxioms:
    def test_tetrahedron_from_cycles(self):
        P = from_generators("(1 2),(2 3),(3 4)")
        inv = P.invariants
        assert (inv.p, inv.q, inv.v, inv.e, inv.f) == (3, 3, 4, 6, 4)
        assert (inv.z1, inv.h, inv.z2) == (4, 3, 4)

    def test_intersection_condition(self):
        with pytest.raises(IntersectionConditionFailed) as info:
            try_polyhedron(*gens("(1 2),(2 3),(1 2)"))
        assert "<r1>" in info.value.axiom

    def test_repeated_generator_is_degenerate(self):
        with pytest.raises(DegenerateType):
            try_polyhedron(*gens("(1 2),(1 2),(3 4)"))

    def test_identity_is_not_an_involution(self):
        a, _, c = gens("(1 2),(2 3),(3 4)")
        with pytest.raises(NotInvolution):
            try_polyhedron(a, Permutation.identity(4), c)

    def test_outer_pair_must_commute(self):
        with pytest.raises(OuterPairNotCommuting) as info:
            try_polyhedron(*gens("(1 2),(3 4),(2 3)"))
        assert info.value.axiom == "(r0 r2)^2 = 1"

    def test_errors_share_a_base(self):
        for cls in (NotInvolution, OuterPairNotCommuting, IntersectionConditionFailed):
            assert issubclass(cls, PolyhedronError)

    def test_direct_construction_refused(self):
        from vfpoly.polyhedron import Polyhedron
        r = gens("(1 2),(2 3),(3 4)")
        with pytest.raises(TypeError):
            Polyhedron(*r, _group=generate(r))


class TestInvariants:
    def test_octahedron(self):
        inv = fam.octahedron().invariants
        assert (inv.p, inv.q, inv.v, inv.e, inv.f) == (3, 4, 6, 12, 8)
        assert inv.orientable and inv.vertex_faithful and not inv.flat

    def test_hemi_icosahedron(self):
        P = fam.hemi_icosahedron()
        inv = P.invariants
        assert inv.type == (3, 5) and P.order == 60 and inv.z1 == 5 and not inv.orientable

    def test_dihedron_is_flat_not_faithful(self):
        inv = from_presentation(Presentation(2, 3)).invariants
        assert inv.flat and not inv.vertex_faithful

    def test_record_is_json_ready(self):
        rec = fam.cube().record()
        assert rec["type"] == [4, 3] and rec["order"] == 48
        assert rec["generators"][0].startswith("(")


class TestCovers:
    def test_torus_covers_tetrahedron(self):
        assert covers(fam.triangular_torus_20(), fam.tetrahedron())
        assert not covers(fam.tetrahedron(), fam.triangular_torus_20())

    def test_reflexive(self):
        P = fam.cube()
        assert covers(P, P) and iso_as_polyhedra(P, P)

    def test_two_representations_of_the_tetrahedron(self):
        assert iso_as_polyhedra(from_generators("(1 2),(2 3),(3 4)"), fam.tetrahedron())

    def test_tetrahedron_is_not_the_hemicube(self):
        assert not iso_as_polyhedra(fam.tetrahedron(), fam.hemicube())

    def test_two_torus_encodings_agree(self):
        A = from_presentation(Presentation(4, 4, (Word.parse("(0121)^3 (1012)^3"),)))
        assert iso_as_polyhedra(A, fam.toroidal_44(3, (3, 3)))


class TestVertexAction:
    def test_tetrahedron_is_faithful(self):
        G, faithful = vertex_action(fam.tetrahedron())
        assert G.degree == 4 and faithful

    def test_torus_on_four_vertices_is_not(self):
        G, faithful = vertex_action(fam.triangular_torus_20())
        assert G.degree == 4 and not faithful

    def test_dihedron_fixes_every_vertex_under_r2(self):
        P = from_presentation(fam.lambda_presentation(fam.LambdaParams(5, 2, -1, 1)))
        G, faithful = vertex_action(P)
        assert G.degree == 5 and not faithful
        assert vertex_triple(P)[2].is_identity()

    def test_faithful_flag_matches_core(self):
        for P in (fam.cube(), fam.hemicube(), fam.triangular_torus_20_double()):
            assert vertex_action(P)[1] == P.invariants.vertex_faithful


class TestFixedVertices:
    def test_octahedron(self):
        assert fixed_vertices_of_power(fam.octahedron(), 1) == 2

    def test_torus(self):
        assert fixed_vertices_of_power(fam.toroidal_44(3, (3, 0)), 1) == 1

    def test_full_rotation_fixes_everything(self):
        P = fam.octahedron()
        assert fixed_vertices_of_power(P, 4) == P.invariants.v

    def test_non_divisor(self):
        with pytest.raises(ValueError):
            fixed_vertices_of_power(fam.octahedron(), 3)


class TestRelation1:
    def test_octahedron_fails(self):
        assert not satisfies_relation1(fam.octahedron())

    def test_odd_q_rejected(self):
        with pytest.raises(ValueError):
            satisfies_relation1(fam.tetrahedron())


class TestCoverRelations:
    def test_torus_over_tetrahedron(self):
        P, Q = fam.triangular_torus_20(), fam.tetrahedron()
        res = verify_vf_cover_relations(P, Q)
        assert res.covered and res.q_ratio == 2 and P.order == 2 * Q.order

    def test_identity_cover(self):
        Q = fam.tetrahedron()
        res = verify_vf_cover_relations(Q, Q)
        assert (res.q_ratio, res.a) == (1, 1)

    def test_four_fold_cover(self):
        res = verify_vf_cover_relations(fam.triangular_torus_20_double(), fam.tetrahedron())
        assert res.q_ratio == 4
        assert (res.a * res.a - 1) % res.q_ratio == 0

    def test_preconditions(self):
        with pytest.raises(CoverPreconditionError):
            verify_vf_cover_relations(fam.tetrahedron(), fam.cube())
        with pytest.raises(CoverPreconditionError):
            verify_vf_cover_relations(fam.triangular_torus_20_double(), fam.triangular_torus_20())
