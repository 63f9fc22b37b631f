"""Acceptance criteria 1-8, exact.

Each criterion is a plain function returning (ok, detail) so the file also runs
as a script: ``python tests/test_acceptance.py``.  Under pytest every verdict
is printed as one line in the terminal summary.
"""

from __future__ import annotations

import sys
import time

import pytest

from vfpoly import families as fam
from vfpoly.enumerate import (
    CensusRecord,
    brute_force_vertex_faithful,
    classify_prime,
    classify_twice_prime,
    enumerate_vertex_faithful,
    record_of,
    smallest_b_squared,
)
from vfpoly.families import oracle_sweep
from vfpoly.operators import (
    InputFlat,
    NotPolyhedral,
    dual,
    petrial,
    petrial_dual_torus,
    vertex_faithful_quotient,
)
from vfpoly.perm import burnside_holds, generate, is_transitive
from vfpoly.polyhedron import (
    fixed_vertices_of_power,
    iso_as_polyhedra,
    satisfies_relation1,
    vertex_triple,
)
from vfpoly.tables import (
    TABLE1_VERTICES,
    TABLE2_VERTICES,
    row_signature,
    verify_tables,
    vertex_faithful_rows,
)

PRIMES = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}
CORPUS_ORDER_CAP = 2000


def _reports(reps):
    bad = [f"{r.name}: {f}" for r in reps for f in r.failures]
    return not bad, "; ".join(bad) or ", ".join(r.name for r in reps)


def criterion_1():
    rep = verify_tables(TABLE1_VERTICES, "table1")
    return _reports([rep])


def criterion_2():
    rep = verify_tables(TABLE2_VERTICES, "table2")
    return _reports([rep])


def criterion_3():
    return _reports([classify_prime(b) for b in (5, 7, 11, 13)])


def criterion_4():
    reps = [classify_twice_prime(b) for b in (7, 11)]
    ok, detail = _reports(reps)
    want = sorted(row_signature(r) for r in vertex_faithful_rows(14)
                  if r["name"] in ("{14,7}*196", "{4,14}*392"))
    got = sorted(r.signature for r in enumerate_vertex_faithful(14))
    if len(want) != 2 or got != want:
        return False, f"v=14 signatures {got} != table {want}"
    return ok, detail + "; v=14 signatures match {14,7}*196 and {4,14}*392"


def criterion_5():
    return _reports([smallest_b_squared(b) for b in (3, 5, 7)])


def criterion_6():
    cases, hits, bad = oracle_sweep(12)
    detail = f"{cases} cases, {hits} flat polyhedra, {len(bad)} disagreements"
    if bad:
        detail += f" e.g. {bad[:3]}"
    return not bad, detail


# --------------------------------------------------------------------------
# criterion 7: properties over every polyhedron built in the session


def _own_corpus():
    out = [fam.tetrahedron(), fam.hemicube(), fam.cube(), fam.octahedron(), fam.icosahedron(),
           fam.hemi_icosahedron(), fam.hemi_dodecahedron(), fam.triangular_torus_20(),
           fam.triangular_torus_20_double(), fam.toroidal_44(3, (3, 0)),
           fam.toroidal_44(2, (2, 2))]
    out += [petrial_dual_torus(s) for s in (3, 5, 7)]
    for v in range(4, 16):
        out += [r.polyhedron() for r in enumerate_vertex_faithful(v)]
    for v, cap in ((5, 10), (7, 14), (9, 18), (10, 10), (14, 14)):
        out += fam.flat_family_catalog(v, cap)
    return out


def _dedupe(polys):
    seen, out = set(), []
    for P in polys:
        key = (P.degree, tuple(g.images for g in P.gens))
        if key not in seen:
            seen.add(key)
            out.append(P)
    return out


def property_failures(corpus) -> tuple[list[str], dict]:
    fails = []
    stats = dict(polyhedra=0, vertex_faithful=0, prime_degree_groups=0, quotients=0)

    def check(cond, what):
        if not cond:
            fails.append(what)

    for P in corpus:
        if P.order > CORPUS_ORDER_CAP:
            continue
        stats["polyhedra"] += 1
        inv = P.invariants
        name = P.type_name()
        check(4 * inv.e == 2 * inv.v * inv.q == 2 * inv.f * inv.p == P.order,
              f"{name}: counting identity")
        for k in range(1, inv.q):
            if inv.q % k == 0 and 2 * k < inv.q:
                check(inv.v % fixed_vertices_of_power(P, k) == 0, f"{name}: fixed points of (r1r2)^{k}")
        if inv.vertex_faithful:
            stats["vertex_faithful"] += 1
            check(inv.q <= inv.v, f"{name}: q <= v")
            check(not (inv.orientable and inv.q == inv.v), f"{name}: orientable with q = v")
            check(inv.q < inv.v or (inv.q % 4 == 2 and not inv.orientable),
                  f"{name}: q = v needs q/2 odd and non-orientable")
            check(P.order <= 2 * inv.v * inv.v, f"{name}: at most 2v^2 flags")
        check(iso_as_polyhedra(dual(dual(P)), P), f"{name}: dual twice")
        try:
            check(iso_as_polyhedra(petrial(petrial(P)), P), f"{name}: petrial twice")
        except NotPolyhedral:
            pass
        if not inv.flat:
            Q, qq = vertex_faithful_quotient(P)
            stats["quotients"] += 1
            qi = Q.invariants
            check(qi.vertex_faithful and not qi.flat and qi.v == inv.v and inv.q % qq == 0,
                  f"{name}: vertex-faithful quotient")
        groups = [generate(list(vertex_triple(P)))]
        if P.degree != inv.v:
            groups.append(P.group)
        for G in groups:
            if G.degree in PRIMES and is_transitive(G):
                stats["prime_degree_groups"] += 1
                check(burnside_holds(G), f"{name}: Burnside on degree {G.degree}")
    return fails, stats


def criterion_7(extra=()):
    corpus = _dedupe(list(extra) + _own_corpus())
    fails, stats = property_failures(corpus)
    tetra = fam.tetrahedron()
    if not iso_as_polyhedra(petrial(tetra), fam.hemicube()):
        fails.append("petrial(tetrahedron) is not the hemicube")
    for s in (3, 5, 7):
        if not satisfies_relation1(petrial_dual_torus(s)):
            fails.append(f"relation (1) fails on the petrial-dual torus s={s}")
    Q, qq = vertex_faithful_quotient(fam.triangular_torus_20())
    if not (qq == 3 and iso_as_polyhedra(Q, tetra)):
        fails.append("quotient of {3,6}_(2,0) is not the tetrahedron with q' = 3")
    try:
        vertex_faithful_quotient(fam.flat_family_catalog(5, 10)[0])
        fails.append("flat input accepted by the quotient")
    except InputFlat:
        pass
    detail = ", ".join(f"{k}={v}" for k, v in stats.items())
    if fails:
        detail += f"; {len(fails)} failures: " + "; ".join(fails[:5])
    return not fails, detail


def criterion_8():
    diffs = []
    for v in (4, 5, 6):
        brute = sorted((record_of(P) for P in brute_force_vertex_faithful(v)),
                       key=CensusRecord.sort_key)
        prod = enumerate_vertex_faithful(v)
        if brute != prod:
            diffs.append(f"v={v}: brute {len(brute)} vs production {len(prod)}")
    return not diffs, "; ".join(diffs) or "v=4,5,6 identical"


CRITERIA = {
    1: ("census v=4..10 vs bundled rows", criterion_1),
    2: ("census v=12..15 vs bundled rows", criterion_2),
    3: ("prime vertex counts", criterion_3),
    4: ("twice-prime vertex counts", criterion_4),
    5: ("b^2 smallest candidates", criterion_5),
    6: ("flat predicate vs oracle", criterion_6),
    7: ("property suites", criterion_7),
    8: ("brute force vs production", criterion_8),
}


def run_criterion(k, *args):
    title, fn = CRITERIA[k]
    t0 = time.perf_counter()
    ok, detail = fn(*args)
    line = f"criterion {k} {'PASS' if ok else 'FAIL'} [{time.perf_counter() - t0:.1f}s] {title}: {detail}"
    return ok, line


@pytest.mark.slow
@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, seen_polyhedra):
    from conftest import ACCEPTANCE_LINES

    args = (list(seen_polyhedra.values()),) if k == 7 else ()
    ok, line = run_criterion(k, *args)
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    wanted = [int(a) for a in sys.argv[1:]] or sorted(CRITERIA)
    results = []
    for k in wanted:
        ok, line = run_criterion(k)
        print(line, flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
