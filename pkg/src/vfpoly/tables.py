"""Bundled census tables and comparison of computed censuses against them."""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from importlib import resources

from .enumerate import CensusRecord, Report, enumerate_vertex_faithful
from .families import table6_universal_check
from .fp import CosetLimitExceeded, Presentation, Word, stabiliser_free_rank
from .perm import regular_action

TABLE1_VERTICES = tuple(range(4, 11))
TABLE2_VERTICES = (12, 13, 14, 15)


@lru_cache(maxsize=None)
def bundled() -> dict:
    with resources.files(__package__).joinpath("data/census_tables.json").open() as fh:
        return json.load(fh)


def vertex_faithful_rows(v: int | None = None) -> list[dict]:
    data = bundled()
    rows = data["vertex_faithful_small"] + data["vertex_faithful_medium"]
    return [r for r in rows if v is None or r["v"] == v]


def row_signature(row: dict) -> tuple:
    return (row["v"], tuple(row["type"]), row["order"], row["z1"], row["h"], row["z2"])


def universal_input(row: dict) -> dict:
    p, q = row["type"]
    return {"p": p, "q": q, "order": row["order"], "z1": row["z1"], "h": row["h"], "z2": row["z2"]}


def universal_presentation(row: dict) -> Presentation:
    u = universal_input(row)
    rels = (Word((0, 1, 2) * u["z1"]), Word((0, 1, 2, 1) * u["h"]), Word((0, 1, 2, 1, 2) * u["z2"]))
    return Presentation(u["p"], u["q"], rels)


def universal_status(row: dict, record: CensusRecord | None = None,
                     limit: int | None = None) -> tuple[bool | None, str]:
    """Decide the Universal column for one row, with a note on how it was decided.

    Coset enumeration settles most rows.  When it runs out of room, a census
    record of the row lets us test the kernel of the universal group onto the
    record's group: a positive free abelian rank there means the universal
    group is infinite, hence not universal.  Otherwise the answer is None.
    """
    try:
        ok = table6_universal_check(universal_input(row), limit)
        return ok, "coset enumeration"
    except CosetLimitExceeded:
        if record is None:
            return None, "coset limit exceeded"
    rank = stabiliser_free_rank(universal_presentation(row), regular_action(record.polyhedron().group))
    if rank > 0:
        return False, f"infinite: kernel onto the record's group has free rank {rank}"
    return None, "coset limit exceeded and kernel has free rank 0"


def diff_census(records: list[CensusRecord], vertices) -> list[str]:
    """Row-level differences between records and the bundled rows for ``vertices``.

    Signatures (v, type, order, z1, h, z2) identify rows; a repeated signature
    on either side makes the comparison ambiguous and is reported as an error.
    """
    problems = []
    vertices = sorted(set(vertices))
    want = Counter(row_signature(r) for v in vertices for r in vertex_faithful_rows(v))
    got = Counter(r.signature for r in records)
    for label, counts in (("table", want), ("census", got)):
        for sig, n in sorted(counts.items()):
            if n > 1:
                problems.append(f"ambiguous: signature {sig} occurs {n} times in the {label}")
    for sig in sorted(want - got):
        problems.append(f"missing: {sig}")
    for sig in sorted(got - want):
        if sig[0] in vertices:
            problems.append(f"unexpected: {sig}")
        else:
            problems.append(f"outside the requested vertex counts: {sig}")
    return problems


def verify_tables(vertices, name: str, jobs: int = 1, limit: int | None = None) -> Report:
    """Enumerate each v, diff against the bundled rows, and recheck the Universal column."""
    rep = Report(name)
    for v in vertices:
        census = enumerate_vertex_faithful(v, jobs)
        rows = vertex_faithful_rows(v)
        rep.check(len(census) == len(rows), f"v={v}: {len(census)} records, table has {len(rows)}")
        for problem in diff_census(census, [v]):
            rep.check(False, f"v={v}: {problem}")
        by_sig = {r.signature: r for r in census}
        for row in rows:
            universal, how = universal_status(row, by_sig.get(row_signature(row)), limit)
            rep.check(universal == row["universal"],
                      f"v={v} {row['name']}: universal={universal} ({how}), table says {row['universal']}")
    return rep
