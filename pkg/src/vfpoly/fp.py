"""Presentations over three involutions and coset enumeration.

Text grammar (whitespace between tokens is free)::

    presentation := field*
    field        := "p=" INT | "q=" INT | "rel=" word
    word         := item*
    item         := atom ("^" ["-"] INT)?
    atom         := "0" | "1" | "2" | "(" word ")"

A ``rel=`` word runs until the next ``p=``/``q=``/``rel=`` field.  ``()`` is
the empty word.  Since every generator is an involution, ``^-k`` reverses the
word.  Printing a parsed presentation reproduces its text with runs of
whitespace collapsed, and parsing that text gives back an equal object.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .perm import PermGroup, Permutation

DEFAULT_COSET_LIMIT = 200_000
COSET_LIMIT_ENV = "VFPOLY_COSET_LIMIT"


def default_coset_limit() -> int:
    raw = os.environ.get(COSET_LIMIT_ENV)
    return int(raw) if raw else DEFAULT_COSET_LIMIT


class PresentationSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class CosetLimitExceeded(Exception):
    """Enumeration needed more cosets than allowed.  Says nothing about the index."""

    def __init__(self, limit: int):
        super().__init__(f"coset enumeration exceeded {limit} cosets")
        self.limit = limit


def reduce_word(letters) -> tuple[int, ...]:
    """Cancel adjacent equal letters (each generator is an involution)."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclically_reduce(letters) -> tuple[int, ...]:
    w = list(reduce_word(letters))
    while len(w) > 1 and w[0] == w[-1]:
        w = w[1:-1]
    return tuple(w)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    text: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if any(x not in (0, 1, 2) for x in self.letters):
            raise ValueError(f"letters must be 0, 1 or 2: {self.letters}")
        if not self.text:
            object.__setattr__(self, "text", "".join(map(str, self.letters)) or "()")

    @classmethod
    def parse(cls, text: str) -> Word:
        return cls(_parse_word(text, 0, len(text)), " ".join(text.split()))

    def __str__(self):
        return self.text

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        base = self.letters if k >= 0 else self.letters[::-1]
        return Word(base * abs(k))

    def inverse(self) -> Word:
        return Word(self.letters[::-1])

    def evaluate(self, gens) -> Permutation:
        """Product of the generator permutations along the word, left to right."""
        result = Permutation.identity(gens[0].degree)
        for x in self.letters:
            result = result * gens[x]
        return result


def _parse_word(text: str, start: int, end: int) -> tuple[int, ...]:
    pos = start
    stack: list[list[int]] = [[]]
    opens: list[int] = []

    def skip(p):
        while p < end and text[p].isspace():
            p += 1
        return p

    def power(p):
        # optional ^[-]INT after an atom; returns (exponent, new position)
        p = skip(p)
        if p < end and text[p] == "^":
            m = re.compile(r"\s*(-?\d+)").match(text, p + 1, end)
            if not m:
                raise PresentationSyntaxError("expected integer exponent", text, p + 1)
            return int(m.group(1)), m.end()
        return 1, p

    while True:
        pos = skip(pos)
        if pos >= end:
            break
        ch = text[pos]
        if ch in "012":
            k, pos = power(pos + 1)
            atom = [int(ch)]
            stack[-1].extend(atom * abs(k))
        elif ch == "(":
            stack.append([])
            opens.append(pos)
            pos += 1
        elif ch == ")":
            if not opens:
                raise PresentationSyntaxError("unbalanced ')'", text, pos)
            opens.pop()
            inner = stack.pop()
            k, pos = power(pos + 1)
            body = inner if k >= 0 else inner[::-1]
            stack[-1].extend(body * abs(k))
        else:
            raise PresentationSyntaxError(f"unexpected character {ch!r}", text, pos)
    if opens:
        raise PresentationSyntaxError("unclosed '('", text, opens[-1])
    return tuple(stack[0])


@dataclass(frozen=True)
class Presentation:
    """Quotient of the string Coxeter group [p, q] by extra relators (0 = no bound)."""

    p: int = 0
    q: int = 0
    extra_relators: tuple[Word, ...] = ()

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be non-negative")
        object.__setattr__(self, "extra_relators", tuple(
            r if isinstance(r, Word) else Word.parse(r) if isinstance(r, str) else Word(r)
            for r in self.extra_relators))

    def relators(self) -> list[tuple[int, ...]]:
        """Cyclically reduced relators, implicit ones first; empty results dropped."""
        rels = [(0, 2, 0, 2)]
        if self.p:
            rels.append((0, 1) * self.p)
        if self.q:
            rels.append((1, 2) * self.q)
        rels += [r.letters for r in self.extra_relators]
        out = []
        for r in rels:
            c = cyclically_reduce(r)
            if c and c not in out:
                out.append(c)
        return out

    def with_relators(self, *words) -> Presentation:
        return Presentation(self.p, self.q, self.extra_relators + tuple(words))

    def __str__(self):
        parts = [f"p={self.p}", f"q={self.q}"]
        parts += [f"rel={r.text}" for r in self.extra_relators]
        return " ".join(parts)


_FIELD_RE = re.compile(r"(?:(?<=\s)|^)(p|q|rel)=")


def parse_presentation(text: str) -> Presentation:
    fields = list(_FIELD_RE.finditer(text))
    if not fields:
        if text.strip():
            raise PresentationSyntaxError("expected p=, q= or rel=", text, 0)
        return Presentation()
    if text[:fields[0].start()].strip():
        raise PresentationSyntaxError("unexpected text", text, 0)
    p = q = 0
    rels = []
    for k, m in enumerate(fields):
        end = fields[k + 1].start() if k + 1 < len(fields) else len(text)
        value = text[m.end():end]
        key = m.group(1)
        if key in ("p", "q"):
            if not re.fullmatch(r"\s*\d+\s*", value):
                raise PresentationSyntaxError(f"expected integer for {key}", text, m.end())
            if key == "p":
                p = int(value)
            else:
                q = int(value)
        else:
            if not value.strip():
                raise PresentationSyntaxError("empty relator", text, m.end())
            letters = _parse_word(text, m.end(), end)
            rels.append(Word(letters, " ".join(value.split())))
    return Presentation(p, q, tuple(rels))


# --------------------------------------------------------------------------
# coset enumeration


@dataclass(frozen=True)
class CosetTable:
    """rows[c][x] = coset reached from c by generator x; coset 0 is the subgroup."""

    rows: np.ndarray
    status: str = "complete"

    @property
    def index(self) -> int:
        return len(self.rows)

    def generator_permutations(self) -> list[Permutation]:
        return [Permutation(tuple(int(c) for c in self.rows[:, x])) for x in range(self.rows.shape[1])]

    def satisfies(self, word) -> bool:
        """Does ``word`` act trivially at every coset?"""
        letters = word.letters if isinstance(word, Word) else word
        for c in range(self.index):
            d = c
            for x in letters:
                d = self.rows[d, x]
            if d != c:
                return False
        return True


def _pack(words):
    width = max((len(w) for w in words), default=1) or 1
    arr = np.zeros((len(words), width), dtype=np.int64)
    lens = np.zeros(len(words), dtype=np.int64)
    for k, w in enumerate(words):
        arr[k, :len(w)] = w
        lens[k] = len(w)
    return arr, lens


def enumerate_cosets(P: Presentation, subgroup_gens=(), limit: int | None = None) -> CosetTable:
    """Coset table of <subgroup_gens> in the group presented by P.

    Raises CosetLimitExceeded if more than ``limit`` cosets would be defined.
    """
    if limit is None:
        limit = default_coset_limit()
    if limit < 1:
        raise ValueError("limit must be >= 1")
    subs = [reduce_word(w.letters if isinstance(w, Word) else w) for w in subgroup_gens]
    subs = [s for s in subs if s]
    rels = P.relators()
    words, lens = _pack(subs + rels)
    table, n_defined, parent, status = _kernels.coset_enumerate(words, lens, len(subs), 3, limit)
    if status:
        raise CosetLimitExceeded(limit)
    rows = _kernels.standardize(table, n_defined, parent, 3)
    return CosetTable(rows)


def realize(P: Presentation, limit: int | None = None) -> PermGroup:
    """Regular permutation representation; generators are the images of g0, g1, g2."""
    table = enumerate_cosets(P, (), limit)
    return PermGroup(table.generator_permutations())


def group_order(P: Presentation, limit: int | None = None) -> int:
    return enumerate_cosets(P, (), limit).index


# --------------------------------------------------------------------------
# abelianised subgroups


def _rational_rank(rows: list[dict[int, int]], ncols: int) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {k: Fraction(v) for k, v in raw.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                lead = row[col]
                pivots[col] = {k: v / lead for k, v in row.items()}
                break
            f = row[col]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def stabiliser_free_rank(P: Presentation, action) -> int:
    """Free rank of the abelianised stabiliser of point 0 in the group presented by P.

    ``action`` gives, per generator, the images of a transitive permutation
    action that satisfies every relator.  The stabiliser has finite index, so a
    positive rank proves the presented group is infinite (Reidemeister-Schreier).
    """
    gens = [tuple(int(x) for x in g) for g in action]
    n = len(gens[0])
    if any(sorted(g) != list(range(n)) or any(g[g[x]] != x for x in range(n)) for g in gens):
        raise ValueError("action must consist of involutions")
    parent: dict[int, tuple[int, int] | None] = {0: None}
    order = [0]
    for c in order:
        for x, g in enumerate(gens):
            if g[c] not in parent:
                parent[g[c]] = (c, x)
                order.append(g[c])
    if len(order) != n:
        raise ValueError("action is not transitive")
    tree = {(min(c, gens[x][c]), x) for c, e in parent.items() if e for c, x in [e]}
    column: dict[tuple[int, int], int] = {}
    for c in range(n):
        for x, g in enumerate(gens):
            edge = (min(c, g[c]), x)
            if edge not in tree and edge not in column:
                column[edge] = len(column)
    rows = []
    for rel in [(x, x) for x in range(len(gens))] + P.relators():
        for c in range(n):
            row: dict[int, int] = {}
            cur = c
            for x in rel:
                nxt = gens[x][cur]
                col = column.get((min(cur, nxt), x))
                if col is not None:
                    row[col] = row.get(col, 0) + (1 if cur <= nxt else -1)
                cur = nxt
            if cur != c:
                raise ValueError(f"relator {rel} does not hold in the action")
            rows.append(row)
    return len(column) - _rational_rank(rows, len(column))
