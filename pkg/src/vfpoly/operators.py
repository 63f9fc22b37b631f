"""Dual, Petrial, and the vertex-faithful quotient."""

from __future__ import annotations

from .perm import Permutation, normal_core
from .polyhedron import Polyhedron, PolyhedronError, try_polyhedron, vertex_triple


class NotPolyhedral(PolyhedronError):
    """The transformed triple is not a string C-group."""

    def __init__(self, msg, axiom):
        super().__init__(msg)
        self.axiom = axiom


class InputFlat(ValueError):
    pass


class CoreNotRotational(AssertionError):
    pass


def dual(P: Polyhedron) -> Polyhedron:
    r0, r1, r2 = P.gens
    return try_polyhedron(r2, r1, r0, name=f"dual({P.name})" if P.name else None)


def petrial_unchecked(P: Polyhedron) -> tuple[Permutation, Permutation, Permutation]:
    r0, r1, r2 = P.gens
    return (r0 * r2, r1, r2)


def petrial(P: Polyhedron) -> Polyhedron:
    """(r0 r2, r1, r2), re-validated; raises NotPolyhedral when the axioms fail."""
    try:
        return try_polyhedron(*petrial_unchecked(P), name=f"petrial({P.name})" if P.name else None)
    except PolyhedronError as exc:
        raise NotPolyhedral(f"Petrial is not a polyhedron: {exc}", exc.axiom) from exc


def vertex_faithful_quotient(P: Polyhedron) -> tuple[Polyhedron, int]:
    """Quotient by the core of the vertex stabiliser, and the new q.

    The core of a non-flat polyhedron is generated by a power of s2 = r1 r2.
    """
    inv = P.invariants
    if inv.flat:
        raise InputFlat("flat polyhedra need not have a vertex-faithful quotient")
    N = normal_core(P.group, P.vertex_stabilizer)
    n = N.order
    if inv.q % n:
        raise CoreNotRotational(f"core of order {n} does not divide q = {inv.q}")
    qq = inv.q // n
    rotations = {(P.sigma2 ** (k * qq)).images for k in range(n)}
    if set(map(tuple, N.element_array.tolist())) != rotations:
        raise CoreNotRotational("core is not generated by a power of r1 r2")
    if n == 1:
        return P, inv.q
    Q = try_polyhedron(*vertex_triple(P))
    qi = Q.invariants
    if (qi.p, qi.q, qi.v) != (inv.p, qq, inv.v) or Q.order * n != P.order or qi.flat:
        raise CoreNotRotational(f"quotient {Q.type_name()} has the wrong shape")
    return Q, qq


def petrial_dual_torus(s: int) -> Polyhedron:
    """Dual of the Petrial of {4,4}_(s,0): type {4,2s}, 2s vertices, 8 s^2 flags."""
    from .families import toroidal_44

    if s < 3:
        raise ValueError("s must be at least 3")
    P = dual(petrial(toroidal_44(s, (s, 0))))
    P.name = f"({{4,4}}_({s},0))^pd"
    return P
