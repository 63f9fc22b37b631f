"""Isomorphism-free search for vertex-faithful regular polyhedra by vertex count.

A vertex-faithful polyhedron with v vertices is the same thing as a transitive
triple of involutions on v points, with r0 r2 = r2 r0, the intersection
condition, and a point u fixed by r1 and r2 whose stabiliser is exactly
<r1, r2>.

Two independent searches produce that set.  The default walks each type
{p, q} allowed at v and builds the vertex action as a partial coset table,
keeping only tables in canonical order.  The second fixes (r0, r2) up to
conjugacy, puts u on an edge moved only by r0, and runs r1 through every
involution fixing u.  Both end in the same dedupe by canonical form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from multiprocessing import get_context

import numpy as np

from . import _kernels
from .families import LambdaParams, _is_prime, flat_family_catalog, lambda_presentation
from .operators import petrial, petrial_dual_torus
from .perm import (
    EDGE0,
    Permutation,
    all_involutions,
    canonical_form,
    commuting_involution_pair_reps,
    format_cycles,
    has_normal_sylow,
    pair_component_type,
    parse_cycles,
)
from .polyhedron import (
    Polyhedron,
    PolyhedronError,
    from_presentation,
    iso_as_polyhedra,
    try_polyhedron,
    vertex_triple,
)

MIN_VERTICES, MAX_VERTICES = 3, 15


@dataclass(frozen=True)
class CprTriple:
    v: int
    r0: Permutation
    r1: Permutation
    r2: Permutation

    @property
    def gens(self):
        return (self.r0, self.r1, self.r2)


@dataclass(frozen=True)
class CensusRecord:
    v: int
    type: tuple[int, int]
    order: int
    z1: int
    h: int
    z2: int
    orientable: bool
    flat: bool
    canonical: tuple[str, str, str]

    @property
    def signature(self):
        return (self.v, self.type, self.order, self.z1, self.h, self.z2)

    def sort_key(self):
        return (self.type, self.order, self.z1, self.h, self.z2, self.canonical)

    def to_json(self) -> str:
        d = {
            "v": self.v, "type": list(self.type), "order": self.order,
            "z1": self.z1, "h": self.h, "z2": self.z2,
            "orientable": self.orientable, "flat": self.flat,
            "canonical": list(self.canonical),
        }
        return json.dumps(d, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> CensusRecord:
        d = json.loads(line)
        return cls(d["v"], tuple(d["type"]), d["order"], d["z1"], d["h"], d["z2"],
                   d["orientable"], d["flat"], tuple(d["canonical"]))

    def triple(self) -> CprTriple:
        return CprTriple(self.v, *(parse_cycles(c, self.v) for c in self.canonical))

    def polyhedron(self) -> Polyhedron:
        return try_polyhedron(*self.triple().gens)


def record_of(P: Polyhedron, form=None) -> CensusRecord:
    """Census record of a vertex-faithful P, stored through its action on vertices."""
    inv = P.invariants
    if form is None:
        if not inv.vertex_faithful:
            raise ValueError(f"{P.type_name()} is not vertex-faithful")
        gens = P.gens if P.degree == inv.v else vertex_triple(P)
        form = canonical_form(gens)
    gens = [Permutation(f) for f in form]
    return CensusRecord(inv.v, inv.type, inv.flags, inv.z1, inv.h, inv.z2, inv.orientable,
                        inv.flat, tuple(format_cycles(g) for g in gens))


def _check_range(v):
    if not MIN_VERTICES <= v <= MAX_VERTICES:
        raise ValueError(f"vertex count must be between {MIN_VERTICES} and {MAX_VERTICES}, got {v}")


def type_cells(v: int) -> list[tuple[int, int]]:
    """(p, q) pairs the search must visit.

    q <= v holds for every vertex-faithful polyhedron, and so does p: the
    <r0, r1>-orbit of the base vertex has stabiliser <r1>, hence p points.
    Flags 2vq = 4e = 2pf force vq even and p | vq.
    """
    return [(p, q) for q in range(2, v + 1) for p in range(2, v + 1)
            if (v * q) % 2 == 0 and (v * q) % p == 0]


def _run_type_cell(args):
    v, p, q = args
    rows, n = _kernels.search_tables(v, p, q)
    found = {}
    for row in rows[:n]:
        gens = tuple(Permutation(tuple(int(x) for x in row[k])) for k in range(3))
        found.setdefault(canonical_form(gens), gens)
    return found


def search_cells(v: int) -> list[tuple[Permutation, Permutation, int]]:
    """(r0, r2, u) for every pair class that has an r0-only edge."""
    cells = []
    for r0, r2 in commuting_involution_pair_reps(v):
        if pair_component_type(r0, r2)[EDGE0] == 0:
            continue
        u = next(x for x in range(v) if r2(x) == x and r0(x) != x)
        cells.append((r0, r2, u))
    return cells


def _run_pair_cell(cell):
    r0, r2, u = cell
    a0 = np.array(r0.images, dtype=np.int64)
    a2 = np.array(r2.images, dtype=np.int64)
    rows, n = _kernels.search_cell(a0, a2, u)
    found = {}
    for row in rows[:n]:
        r1 = Permutation(tuple(int(x) for x in row))
        form = canonical_form((r0, r1, r2))
        found.setdefault(form, (r0, r1, r2))
    return found


def _collect(worker, cells, jobs):
    if jobs > 1 and len(cells) > 1:
        with get_context("spawn").Pool(jobs) as pool:
            parts = pool.map(worker, cells, chunksize=1)
    else:
        parts = [worker(c) for c in cells]
    merged = {}
    for part in parts:
        for form, triple in part.items():
            merged.setdefault(form, triple)
    records = []
    for form, triple in merged.items():
        P = try_polyhedron(*triple)
        if not P.invariants.vertex_faithful:
            raise AssertionError(f"search produced a non-faithful triple {P}")
        records.append(record_of(P, form))
    records.sort(key=CensusRecord.sort_key)
    return records


def search_vertex_faithful(v: int, jobs: int = 1, method: str = "tables") -> list[CensusRecord]:
    """Census at v vertices without the public size cap.

    ``method="tables"`` runs the orderly coset-table search over (p, q);
    ``method="pairs"`` runs r1 over all involutions for each (r0, r2) class.
    The two share nothing but the final filters and are cross-checked in tests.
    """
    if v < MIN_VERTICES:
        raise ValueError(f"need at least {MIN_VERTICES} vertices")
    if method == "tables":
        return _collect(_run_type_cell, [(v, p, q) for p, q in type_cells(v)], jobs)
    if method == "pairs":
        return _collect(_run_pair_cell, search_cells(v), jobs)
    raise ValueError(f"unknown method {method!r}")


def enumerate_vertex_faithful(v: int, jobs: int = 1) -> list[CensusRecord]:
    """One record per vertex-faithful regular polyhedron with v vertices, sorted."""
    _check_range(v)
    return search_vertex_faithful(v, jobs)


def write_census(records, path) -> None:
    with open(path, "w") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")


def read_census(path) -> list[CensusRecord]:
    with open(path) as fh:
        return [CensusRecord.from_json(line) for line in fh if line.strip()]


# --------------------------------------------------------------------------
# brute-force oracle: no class reduction, no pruning beyond the definitions


def _transitive(v, imgs):
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for g in imgs:
            if g[x] not in seen:
                seen.add(g[x])
                stack.append(g[x])
    return len(seen) == v


def brute_force_vertex_faithful(v: int) -> list[Polyhedron]:
    """Every vertex-faithful polyhedron on v points, deduplicated by pairwise isomorphism."""
    if v > 6:
        raise ValueError("brute force is only meant for v <= 6")
    invs = all_involutions(v)
    found: list[Polyhedron] = []
    pairs = [(r0, r2) for r0 in invs for r2 in invs if r0 * r2 == r2 * r0]
    for (r0, r2), r1 in product(pairs, invs):
        if not set(r1.fixed_points()) & set(r2.fixed_points()):
            continue
        if not _transitive(v, (r0.images, r1.images, r2.images)):
            continue
        try:
            P = try_polyhedron(r0, r1, r2)
        except PolyhedronError:
            continue
        if P.order != v * P.vertex_stabilizer.order:
            continue
        if not any(Q.order == P.order and iso_as_polyhedra(P, Q) for Q in found):
            found.append(P)
    return found


# --------------------------------------------------------------------------
# classification drivers


@dataclass
class Report:
    name: str
    ok: bool = True
    lines: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def check(self, cond: bool, what: str):
        self.lines.append(f"{'ok  ' if cond else 'FAIL'} {what}")
        if not cond:
            self.ok = False
            self.failures.append(what)
        return cond

    def __str__(self):
        return "\n".join([f"[{self.name}] {'pass' if self.ok else 'FAIL'}"] + self.lines)


def classify_prime(b: int, q_cap: int | None = None, jobs: int = 1) -> Report:
    """Prime b: no vertex-faithful polyhedra, and the flat ones are {b,2} and {b,2b}."""
    if not (_is_prime(b) and 5 <= b <= 13):
        raise ValueError("b must be a prime between 5 and 13")
    if q_cap is None:
        q_cap = 2 * b
    rep = Report(f"prime b={b}")
    census = enumerate_vertex_faithful(b, jobs)
    rep.check(census == [], f"vertex-faithful census at v={b} is empty (got {len(census)})")
    rep.check(not any(not r.flat for r in census), "non-flat count is 0")
    flat = flat_family_catalog(b, q_cap)
    got = [(P.invariants.type, P.order) for P in flat]
    want = [((b, 2), 4 * b)] + ([((b, 2 * b), 4 * b * b)] if 2 * b <= q_cap else [])
    rep.check(got == want, f"flat catalog {got} == {want}")
    for P in flat:
        rep.check(P.invariants.flat and not P.invariants.vertex_faithful,
                  f"{P.type_name()} is flat and not vertex-faithful")
    return rep


def twice_prime_flat(b: int) -> Polyhedron:
    return from_presentation(lambda_presentation(LambdaParams(2 * b, b, 3, 1)),
                             name=f"{{{2 * b},{b}}} flat")


def classify_twice_prime(b: int, jobs: int = 1) -> Report:
    """Twice a prime b >= 7: exactly the flat {2b,b} and the petrial-dual torus."""
    if not (_is_prime(b) and 7 <= b <= 11):
        raise ValueError("b must be a prime between 7 and 11")
    rep = Report(f"twice-prime b={b}")
    census = search_vertex_faithful(2 * b, jobs)
    rep.check(len(census) == 2, f"{len(census)} vertex-faithful records at v={2 * b}")
    for E in (twice_prime_flat(b), petrial_dual_torus(b)):
        match = [r for r in census if r.type == E.invariants.type and r.order == E.order
                 and iso_as_polyhedra(r.polyhedron(), E)]
        rep.check(len(match) == 1, f"{E.type_name()} found in census and isomorphic")
    return rep


def smallest_b_squared(b: int) -> Report:
    """{4,4}_(b,0) and its Petrial: b^2 vertices, 8b^2 flags, q = 4, normal Sylow b."""
    from .families import toroidal_44

    if not (_is_prime(b) and 3 <= b <= 7):
        raise ValueError("b must be an odd prime between 3 and 7")
    rep = Report(f"b-squared b={b}")
    T = toroidal_44(b, (b, 0))
    Pt = petrial(T)
    for P in (T, Pt):
        inv = P.invariants
        label = P.type_name()
        rep.check(inv.v == b * b, f"{label}: {inv.v} vertices")
        rep.check(P.order == 8 * b * b, f"{label}: order {P.order}")
        rep.check(inv.q == 4, f"{label}: q = {inv.q}")
        rep.check(not inv.flat, f"{label}: not flat")
        rep.check(has_normal_sylow(P.group, b), f"{label}: normal Sylow {b}-subgroup")
        rep.check(inv.p != b, f"{label}: p = {inv.p} != {b}")
    rep.check(Pt.invariants.p == 2 * b, f"Petrial has type {{{2 * b},4}}")
    return rep
