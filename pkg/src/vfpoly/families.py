"""Named polyhedra, the flat families, and the arithmetic flatness test.

Rotation words are spelled with ``s1 = r0 r1`` and ``s2 = r1 r2``.  A relation
``X = Y`` becomes the relator ``X Y^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .fp import Presentation, Word, group_order, realize
from .perm import PermGroup
from .polyhedron import Polyhedron, from_presentation, iso_as_polyhedra


def s1(k: int) -> tuple[int, ...]:
    return (0, 1) * k if k >= 0 else (1, 0) * -k


def s2(k: int) -> tuple[int, ...]:
    return (1, 2) * k if k >= 0 else (2, 1) * -k


R1 = (1,)


def relation(lhs, rhs) -> Word:
    """Relator for ``lhs = rhs``; both sides are letter tuples."""
    return Word(tuple(lhs) + tuple(reversed(rhs)))


# --------------------------------------------------------------------------
# Lambda(p, q)_{i, j}


@dataclass(frozen=True)
class LambdaParams:
    """[p, q] modulo s2^-1 s1 = s1^i s2^j, exponents stored reduced."""

    p: int
    q: int
    i: int
    j: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise ValueError("p and q must be at least 2")
        object.__setattr__(self, "i", self.i % self.p)
        object.__setattr__(self, "j", self.j % self.q)


@dataclass(frozen=True)
class FlatVerdict:
    is_flat_polyhedron: bool
    witness: tuple[int, int] | None = None

    def __post_init__(self):
        if self.is_flat_polyhedron != (self.witness is not None):
            raise ValueError("witness must be present exactly when the verdict is true")

    def __bool__(self):
        return self.is_flat_polyhedron


def lambda_presentation(params: LambdaParams) -> Presentation:
    rel = relation(s2(-1) + s1(1), s1(params.i) + s2(params.j))
    return Presentation(params.p, params.q, (rel,))


def lambda_group(params: LambdaParams, limit: int | None = None) -> PermGroup:
    """Regular representation of the group; generators are r0, r1, r2.  No polyhedrality check."""
    return realize(lambda_presentation(params), limit)


def _odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def _two_adic(n: int) -> int:
    a = 0
    while n % 2 == 0:
        n //= 2
        a += 1
    return a


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def core_free_flat(p: int, qq: int, i: int) -> bool:
    """Does Lambda(p, qq)_{i,1} give a flat polyhedron of type {p, qq} with <s2> core-free?"""
    if qq < 2 or p < 2:
        return False
    i %= p
    if qq == 2 and i == p - 1:
        return True
    if qq % 2 == 1:
        return p == 2 * qq and i == 3 % p
    if p % qq:
        return False
    if not _is_power_of_two(gcd(p // qq, qq)):
        return False
    alpha, beta = _two_adic(p), _two_adic(qq)
    if beta == 2 and alpha < 3:
        return False
    if beta not in (1, 2, alpha - 1):
        return False
    if i % 2 == 0:
        return False
    half = p // 2
    x = ((1 - i) // 2) % half
    odd = _odd_part(p)
    p2 = gcd(odd, qq)
    p1 = odd // p2
    if (x + 1) % p2 or (x - 1) % p1:
        return False
    m = 2 ** (alpha - 1)
    # several of these can apply at once when alpha is small; all must hold
    if beta == 1 and (x - 1) % m:
        return False
    if beta == 2 and (x - 2 ** (alpha - 2) - 1) % m:
        return False
    if beta == alpha - 1 and alpha >= 2:
        if (x - 2 ** (alpha - 2) + 1) % m and (x + 1) % m:
            return False
    return True


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def flat_orientable_predicate(params: LambdaParams) -> FlatVerdict:
    """Decide by arithmetic alone whether Lambda(p,q)_{i,j} is a flat polyhedron of type {p,q}."""
    p, q, i, j = params.p, params.q, params.i, params.j
    for pp in _divisors(gcd(p, i + 1)):
        if not core_free_flat(q, pp, -j):
            continue
        for qq in _divisors(gcd(q, j - 1)):
            if core_free_flat(p, qq, i):
                return FlatVerdict(True, (pp, qq))
    return FlatVerdict(False)


def lambda_oracle(params: LambdaParams, limit: int | None = None) -> bool:
    """Coset-enumeration answer to the question the predicate decides."""
    from .polyhedron import PolyhedronError, try_polyhedron

    G = lambda_group(params, limit)
    if G.order != 2 * params.p * params.q:
        return False
    try:
        P = try_polyhedron(*G.generators)
    except PolyhedronError:
        return False
    return P.invariants.type == (params.p, params.q)


# --------------------------------------------------------------------------
# named polyhedra


def _named(p, q, *rels, name=None, limit=None) -> Polyhedron:
    return from_presentation(Presentation(p, q, tuple(Word.parse(r) if isinstance(r, str) else r
                                                      for r in rels)), limit, name=name)


def tetrahedron():
    return _named(3, 3, name="tetrahedron")


def octahedron():
    return _named(3, 4, name="octahedron")


def cube():
    return _named(4, 3, name="cube")


def hemicube():
    return _named(4, 3, "(012)^3", name="hemicube")


def hemi_octahedron():
    return _named(3, 4, "(012)^3", name="hemi-octahedron")


def icosahedron():
    return _named(3, 5, name="icosahedron")


def hemi_icosahedron():
    return _named(3, 5, "(012)^5", name="hemi-icosahedron")


def hemi_dodecahedron():
    return _named(5, 3, "(012)^5", name="hemi-dodecahedron")


def triangular_torus_20():
    """{3,6}_(2,0): four vertices, covers the tetrahedron."""
    return _named(3, 6, "(012)^4", name="{3,6}_(2,0)")


def triangular_torus_20_double():
    """The {3,12} polyhedron with four vertices, another cover of the tetrahedron."""
    return _named(3, 12, "(012)^8", "(0121)^12", "(01212)^8", "0(12)^3 0 (12)^3", name="{3,12}*96")


def toroidal_44(s: int, vector: str | tuple = (1, 0)) -> Polyhedron:
    """{4,4}_(s,0) or {4,4}_(s,s).

    ``vector`` is (s, 0) / (s, s) literally, or the shorthand (1, 0) / (1, 1).
    (s,0) is [4,4] with (s1 s2^-1)^s = 1, (s,s) is [4,4] with Petrie polygons of length 2s.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    a, b = vector
    if b == 0:
        return _named(4, 4, Word((0, 1, 2, 1) * s), name=f"{{4,4}}_({s},0)")
    if a == b:
        return _named(4, 4, Word((0, 1, 2) * (2 * s)), name=f"{{4,4}}_({s},{s})")
    raise ValueError("vector must be (s,0) or (s,s)")


# --------------------------------------------------------------------------
# flat catalogs


@dataclass(frozen=True)
class FlatRow:
    """One table row instantiated at a concrete q."""

    family: str
    presentation: Presentation
    orientable: bool
    vertex_faithful: bool


class FlatValidationError(AssertionError):
    pass


def _lam(p, q, i, j):
    return lambda_presentation(LambdaParams(p, q, i, j))


def _crt_half(mods_res, modulus):
    # smallest x mod `modulus` with x = r (mod m) for every (m, r)
    for x in range(modulus):
        if all((x - r) % m == 0 for m, r in mods_res):
            return x
    return None


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _prime_rows(b, q_cap):
    rows = []
    if 2 <= q_cap:
        rows.append(FlatRow("{b,2}", _lam(b, 2, -1, 1), True, False))
    if b == 3 and 4 <= q_cap:
        rows.append(FlatRow("{3,4}", Presentation(3, 4, (Word.parse("(012)^3"),)), False, False))
    if 2 * b <= q_cap:
        rows.append(FlatRow("{b,2b}", _lam(b, 2 * b, -1, -3), True, False))
    return rows


def _four_rows(q_cap):
    rows = []
    for q in range(2, q_cap + 1, 2):
        rows.append(FlatRow("{4,q}", _lam(4, q, -1, 1), True, False))
    for q in range(8, q_cap + 1, 8):
        alpha, k = _two_adic(q), _odd_part(q)
        x = _crt_half([(k, 1), (2 ** (alpha - 1), 2 ** (alpha - 2) + 1)], q // 2)
        rows.append(FlatRow("{4,2^a k}", _lam(4, q, -1, 2 * x - 1), True, False))
    for k in range(1, q_cap // 3 + 1):
        rel = relation(s2(-1) + s1(1), s1(2) + R1 + s2(1))
        rows.append(FlatRow("{4,3k}", Presentation(4, 3 * k, (rel,)), False, k == 1))
    for k in range(1, q_cap // 6 + 1):
        rel = relation(s2(-1) + s1(1), s1(2) + R1 + s2(1 + 3 * k))
        rows.append(FlatRow("{4,6k}", Presentation(4, 6 * k, (rel,)), False, False))
    return rows


def _twice_prime_rows(b, q_cap):
    p = 2 * b
    rows = []
    if b == 3:
        if 4 <= q_cap:
            rel = relation(s2(-1) + s1(1), s1(-1) + R1 + s2(2))
            rows.append(FlatRow("{6,4}", Presentation(6, 4, (rel,)), False, False))
        for r in range(1, q_cap // 4 + 1, 2):
            e = r + 1 if r % 4 == 1 else -r + 1
            first = relation(s2(-1) + s1(1), s1(2) + R1 + s2(e))
            second = relation(s2(-1) + s1(2), s1(-2) + s2(2 * r - 1))
            rows.append(FlatRow("{6,4r}", Presentation(6, 4 * r, (first, second)), False, r == 1))
    for q in range(2, q_cap + 1, 2):
        rows.append(FlatRow("{2b,q} i=-1", _lam(p, q, -1, 1), True, False))
    for q in range(b, q_cap + 1, b):
        rows.append(FlatRow("{2b,q} i=3", _lam(p, q, 3, 1), True, q == b))
    if p <= q_cap:
        rows.append(FlatRow("{2b,2b}", _lam(p, p, -1, -3), True, False))
    for q in range(p, q_cap + 1, p):
        if q % (2 * b * b) == 0:
            continue
        x = _crt_half([(b, -1), (q // p, 1)], q // 2)
        rows.append(FlatRow("{2b,q} j", _lam(p, q, -1, 2 * x - 1), True, False))
    return rows


def _b_squared_rows(b, q_cap):
    v = b * b
    rows = []
    if b == 3 and 4 <= q_cap:
        rows.append(FlatRow("{9,4}", Presentation(9, 4, (Word.parse("(0121)^2 2"),)), False, False))
    if 2 <= q_cap:
        rows.append(FlatRow("{b^2,2}", _lam(v, 2, -1, 1), True, False))
    if 2 * b <= q_cap:
        rows.append(FlatRow("{b^2,2b}", _lam(v, 2 * b, -1, -3), True, False))
    if 2 * v <= q_cap:
        rows.append(FlatRow("{b^2,2b^2}", _lam(v, 2 * v, -1, -3), True, False))
    return rows


def flat_rows(v: int, q_cap: int) -> list[FlatRow]:
    """Table rows for v in {4, b, 2b, b^2} (b an odd prime, or v = 2), q up to q_cap."""
    if v == 2:
        return [FlatRow("{2,q}", Presentation(2, q), True, False) for q in range(2, q_cap + 1)]
    if v == 4:
        return _four_rows(q_cap)
    if _is_prime(v):
        return _prime_rows(v, q_cap)
    if v % 2 == 0 and _is_prime(v // 2):
        return _twice_prime_rows(v // 2, q_cap)
    r = round(v ** 0.5)
    if r * r == v and _is_prime(r):
        return _b_squared_rows(r, q_cap)
    raise ValueError(f"no flat catalog for {v} vertices (need 4, b, 2b or b^2 with b prime)")


def validate_flat_row(row: FlatRow, v: int, limit: int | None = None) -> Polyhedron:
    P = from_presentation(row.presentation, limit, name=row.family)
    inv = P.invariants
    want = (row.presentation.p, row.presentation.q)
    problems = []
    if inv.type != want:
        problems.append(f"type {inv.type} != {want}")
    if not inv.flat:
        problems.append("not flat")
    if inv.v != v:
        problems.append(f"{inv.v} vertices")
    if inv.orientable != row.orientable:
        problems.append(f"orientable={inv.orientable}")
    if inv.vertex_faithful != row.vertex_faithful:
        problems.append(f"vertex_faithful={inv.vertex_faithful}")
    if problems:
        raise FlatValidationError(f"{row.family} {row.presentation}: " + ", ".join(problems))
    return P


def flat_family_catalog(v: int, q_cap: int, limit: int | None = None) -> list[Polyhedron]:
    """Every flat polyhedron with v vertices and q <= q_cap, one per isomorphism class."""
    out: list[Polyhedron] = []
    for row in flat_rows(v, q_cap):
        P = validate_flat_row(row, v, limit)
        if not any(iso_as_polyhedra(P, Q) for Q in out if Q.invariants.type == P.invariants.type):
            out.append(P)
    out.sort(key=lambda P: (P.invariants.type, P.order))
    return out


# --------------------------------------------------------------------------
# universality


def table6_universal_check(row, limit: int | None = None) -> bool:
    """Is [p,q] with only the z1, h, z2 orders imposed already of the row's order?

    ``row`` needs p, q, order, z1, h, z2 (attributes or mapping keys).
    """
    get = row.get if isinstance(row, dict) else lambda k: getattr(row, k)
    rels = (Word((0, 1, 2) * get("z1")), Word((0, 1, 2, 1) * get("h")),
            Word((0, 1, 2, 1, 2) * get("z2")))
    return group_order(Presentation(get("p"), get("q"), rels), limit) == get("order")


def oracle_sweep(p_max: int, p_min: int = 3, limit: int | None = None):
    """Compare the predicate with coset enumeration for every (p, q, i, j) in range.

    Returns (cases checked, true verdicts, list of disagreeing parameter sets).
    """
    cases = hits = 0
    bad = []
    for p in range(p_min, p_max + 1):
        for q in range(p_min, p_max + 1):
            for i in range(p):
                for j in range(q):
                    params = LambdaParams(p, q, i, j)
                    said = bool(flat_orientable_predicate(params))
                    cases += 1
                    hits += said
                    if said != lambda_oracle(params, limit):
                        bad.append(params)
    return cases, hits, bad
