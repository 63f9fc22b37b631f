"""Rank-3 string C-groups (abstract regular polyhedra) and their invariants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .fp import Presentation, realize
from .perm import (
    OrderCapExceeded,
    PermGroup,
    Permutation,
    coset_action,
    format_cycles,
    generate,
    normal_core,
    parse_generators,
)


class PolyhedronError(ValueError):
    """A generator triple violates one of the string C-group axioms."""

    axiom = "string C-group"


class NotInvolution(PolyhedronError):
    axiom = "generators are nonidentity involutions"


class DegenerateType(NotInvolution):
    axiom = "p >= 2 and q >= 2"


class OuterPairNotCommuting(PolyhedronError):
    axiom = "(r0 r2)^2 = 1"


class IntersectionConditionFailed(PolyhedronError):
    axiom = "<r0,r1> & <r1,r2> = <r1>"


@dataclass(frozen=True)
class InvariantRecord:
    p: int
    q: int
    v: int
    e: int
    f: int
    flags: int
    z1: int
    h: int
    z2: int
    orientable: bool
    flat: bool
    vertex_faithful: bool

    @property
    def type(self) -> tuple[int, int]:
        return (self.p, self.q)


@dataclass(frozen=True)
class CoverAnalysis:
    covered: bool
    q_ratio: int
    a: int | None


def _dihedral(a: Permutation, b: Permutation) -> PermGroup:
    return generate([a, b])


class Polyhedron:
    """A validated generator triple (r0, r1, r2) of a faithful permutation group.

    Construct through :func:`try_polyhedron`, which checks the axioms.
    """

    def __init__(self, r0: Permutation, r1: Permutation, r2: Permutation, *,
                 _group: PermGroup, _checked: bool = False, name: str | None = None):
        if not _checked:
            raise TypeError("use try_polyhedron() to build a Polyhedron")
        self.gens = (r0, r1, r2)
        self.group = _group
        self.name = name
        self.invariants = self._compute_invariants()

    @property
    def r0(self):
        return self.gens[0]

    @property
    def r1(self):
        return self.gens[1]

    @property
    def r2(self):
        return self.gens[2]

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def vertex_stabilizer(self) -> PermGroup:
        return _dihedral(self.r1, self.r2)

    @cached_property
    def facet_stabilizer(self) -> PermGroup:
        return _dihedral(self.r0, self.r1)

    @cached_property
    def edge_stabilizer(self) -> PermGroup:
        return _dihedral(self.r0, self.r2)

    def word(self, letters: Sequence[int]) -> Permutation:
        out = Permutation.identity(self.degree)
        for x in letters:
            out = out * self.gens[x]
        return out

    @property
    def sigma1(self) -> Permutation:
        return self.r0 * self.r1

    @property
    def sigma2(self) -> Permutation:
        return self.r1 * self.r2

    def _compute_invariants(self) -> InvariantRecord:
        G = self.group
        r0, r1, r2 = self.gens
        flags = G.order
        rotations = generate([r0 * r1, r1 * r2])
        core = normal_core(G, self.vertex_stabilizer)
        p = (r0 * r1).order()
        q = (r1 * r2).order()
        return InvariantRecord(
            p=p,
            q=q,
            v=flags // self.vertex_stabilizer.order,
            e=flags // self.edge_stabilizer.order,
            f=flags // self.facet_stabilizer.order,
            flags=flags,
            z1=self.word((0, 1, 2)).order(),
            h=self.word((0, 1, 2, 1)).order(),
            z2=self.word((0, 1, 2, 1, 2)).order(),
            orientable=flags // rotations.order == 2,
            flat=flags == 2 * p * q,
            vertex_faithful=core.is_trivial(),
        )

    def type_name(self) -> str:
        inv = self.invariants
        return f"{{{inv.p},{inv.q}}}*{inv.flags}"

    def record(self) -> dict:
        """JSON-ready record with a fixed field order."""
        inv = self.invariants
        return {
            "type": [inv.p, inv.q],
            "order": inv.flags,
            "v": inv.v,
            "e": inv.e,
            "f": inv.f,
            "z1": inv.z1,
            "h": inv.h,
            "z2": inv.z2,
            "orientable": inv.orientable,
            "flat": inv.flat,
            "vertex_faithful": inv.vertex_faithful,
            "generators": [format_cycles(g) for g in self.gens],
            "degree": self.degree,
        }

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Polyhedron {self.type_name()}{label} on {self.degree} points>"


def try_polyhedron(r0: Permutation, r1: Permutation, r2: Permutation, *,
                   name: str | None = None) -> Polyhedron:
    """Validate a generator triple as a rank-3 string C-group."""
    gens = (r0, r1, r2)
    if len({g.degree for g in gens}) != 1:
        raise ValueError("generators must share a degree")
    for k, g in enumerate(gens):
        if not g.is_involution():
            raise NotInvolution(f"r{k} is not a nonidentity involution")
    if r0 == r1 or r1 == r2:
        raise DegenerateType("r1 coincides with a neighbouring generator (p or q would be 1)")
    if r0 * r2 != r2 * r0:
        raise OuterPairNotCommuting("r0 and r2 do not commute")
    d01 = _dihedral(r0, r1)
    d12 = _dihedral(r1, r2)
    common = d01._index.keys() & d12._index.keys()
    if len(common) != 2:
        raise IntersectionConditionFailed(
            f"<r0,r1> and <r1,r2> share {len(common)} elements, expected 2")
    if __debug__:
        d02 = _dihedral(r0, r2)
        assert len(d01._index.keys() & d02._index.keys()) == 2
        assert len(d12._index.keys() & d02._index.keys()) == 2
    G = generate(list(gens))
    P = Polyhedron(r0, r1, r2, _group=G, _checked=True, name=name)
    P.__dict__["facet_stabilizer"] = d01
    P.__dict__["vertex_stabilizer"] = d12
    return P


def from_generators(text: str, *, name: str | None = None) -> Polyhedron:
    """Polyhedron from 1-indexed cycle notation, e.g. ``"(1 2),(2 3),(3 4)"``."""
    gens = parse_generators(text)
    if len(gens) != 3:
        raise ValueError(f"expected three generators, got {len(gens)}")
    return try_polyhedron(*gens, name=name)


def from_presentation(P: Presentation, limit: int | None = None, *,
                      name: str | None = None) -> Polyhedron:
    """Realise P on its cosets and validate the generator triple."""
    G = realize(P, limit)
    return try_polyhedron(*G.generators, name=name)


def invariants(P: Polyhedron) -> InvariantRecord:
    return P.invariants


# --------------------------------------------------------------------------
# covers


def _diagonal(P: Polyhedron, Q: Polyhedron) -> list[Permutation]:
    n = P.degree
    out = []
    for a, b in zip(P.gens, Q.gens):
        out.append(Permutation(a.images + tuple(n + x for x in b.images)))
    return out


def covers(P: Polyhedron, Q: Polyhedron) -> bool:
    """Is there an epimorphism Gamma(P) -> Gamma(Q) sending generators to generators?"""
    if P.order % Q.order:
        return False
    try:
        generate(_diagonal(P, Q), cap=P.order)
    except OrderCapExceeded:
        return False
    return True


def iso_as_polyhedra(P: Polyhedron, Q: Polyhedron) -> bool:
    return P.order == Q.order and covers(P, Q)


# --------------------------------------------------------------------------
# vertex action and related checks


def vertex_action(P: Polyhedron) -> tuple[PermGroup, bool]:
    """Action on the cosets of <r1, r2> (vertex 0 is the base vertex).

    The flag is computed from the size of the image, independently of the
    core computation behind ``invariants.vertex_faithful``.
    """
    imgs = coset_action(P.group, P.vertex_stabilizer, P.gens)
    image = generate(imgs)
    return image, image.order == P.order


def vertex_triple(P: Polyhedron) -> tuple[Permutation, Permutation, Permutation]:
    return tuple(coset_action(P.group, P.vertex_stabilizer, P.gens))


def fixed_vertices_of_power(P: Polyhedron, k: int) -> int:
    """Number of vertices fixed by (r1 r2)^k, for k dividing q."""
    q = P.invariants.q
    if k <= 0 or q % k:
        raise ValueError(f"{k} does not divide q = {q}")
    _, r1, r2 = vertex_triple(P)
    return len(((r1 * r2) ** k).fixed_points())


def satisfies_relation1(P: Polyhedron) -> bool:
    """r0 s^(q/2) r0 == r2 s^(q/2) with s = r1 r2."""
    q = P.invariants.q
    if q % 2:
        raise ValueError(f"q = {q} is odd")
    half = P.sigma2 ** (q // 2)
    return P.r0 * half * P.r0 == P.r2 * half


class CoverPreconditionError(ValueError):
    pass


def verify_vf_cover_relations(P: Polyhedron, Q: Polyhedron) -> CoverAnalysis:
    """Check the structure of a same-vertex-count cover of a vertex-faithful Q.

    Verifies that the covering kernel is <s^q'> (s = r1 r2, q' the q of Q),
    finds ``a`` with r0 s^q' r0 = s^(a q'), checks a^2 = 1 mod q/q', and the
    odd-zigzag consequence q = 2q'.  Failures raise AssertionError.
    """
    if not covers(P, Q):
        raise CoverPreconditionError("P does not cover Q")
    if P.invariants.v != Q.invariants.v:
        raise CoverPreconditionError("P and Q have different vertex counts")
    if not Q.invariants.vertex_faithful:
        raise CoverPreconditionError("Q is not vertex-faithful")
    q, qp = P.invariants.q, Q.invariants.q
    ratio = q // qp
    if ratio == 1:
        return CoverAnalysis(covered=True, q_ratio=1, a=1)
    # kernel of the covering: P-parts of diagonal elements whose Q-part is trivial
    n = P.degree
    diag = generate(_diagonal(P, Q))
    E = diag.element_array
    ident_q = tuple(range(Q.degree))
    kernel = {tuple(int(x) for x in row[:n]) for row in E if tuple(int(x) - n for x in row[n:]) == ident_q}
    s = P.sigma2 ** qp
    cyclic = {(s ** k).images for k in range(ratio)}
    assert kernel == cyclic, "covering kernel is not generated by s^q'"
    lhs = P.r0 * s * P.r0
    a = next((k for k in range(ratio) if s ** k == lhs), None)
    assert a is not None, "r0 does not normalise <s^q'>"
    assert (a * a - 1) % ratio == 0, "a^2 != 1 mod q/q'"
    iq = Q.invariants
    if (iq.p % 2 or iq.h % 2) and (iq.z1 % 2 or iq.z2 % 2):
        assert q == 2 * qp, "odd holes and zigzags force q = 2q'"
        assert P.order == 2 * Q.order
    return CoverAnalysis(covered=True, q_ratio=ratio, a=a)

