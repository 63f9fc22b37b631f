"""Permutations and small permutation groups with fully materialised elements.

Points are 0-indexed internally; cycle notation for input/output is 1-indexed.
Products act left to right: ``(i)(a * b) = ((i)a)b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np


class DegreeMismatch(ValueError):
    pass


class OrderCapExceeded(Exception):
    """Closure grew past the requested order cap (prune this candidate)."""

    def __init__(self, cap):
        super().__init__(f"group order exceeds cap {cap}")
        self.cap = cap


class NotTransitive(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection on 0..{len(imgs) - 1}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-indexed cycles."""
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def is_involution(self) -> bool:
        """Nonidentity element of order 2."""
        return not self.is_identity() and all(self.images[j] == i for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def conjugate(self, by: Permutation) -> Permutation:
        """by^-1 * self * by."""
        return by.inverse() * self * by

    def __str__(self):
        return format_cycles(self)

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """The product a*b: apply a first, then b."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees differ: {a.degree} vs {b.degree}")
    bi = b.images
    return Permutation(tuple(bi[x] for x in a.images))


# --------------------------------------------------------------------------
# cycle notation

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-indexed cycle notation such as ``(1 2)(3 4)`` or ``()``."""
    s = text.strip()
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise ValueError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(x) - 1 for x in body]
        except ValueError:
            raise ValueError(f"bad point in cycle {m.group(0)!r}") from None
        if any(x < 0 for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle {m.group(0)!r}")
        if pts:
            cycles.append(pts)
        pos = m.end()
    if s[pos:].strip() or (not cycles and "(" not in s):
        raise ValueError(f"cannot parse permutation {text!r}")
    top = max((max(c) + 1 for c in cycles), default=0)
    if degree is None:
        degree = max(top, 1)
    elif top > degree:
        raise ValueError(f"point {top} exceeds degree {degree}")
    return Permutation.from_cycles(cycles, degree)


def format_cycles(perm: Permutation) -> str:
    cyc = perm.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_generators(text: str, degree: int | None = None) -> list[Permutation]:
    """Parse a comma-separated list like ``"(1 2),(2 3),(3 4)"`` on a common degree."""
    parts = split_top_level(text)
    if degree is None:
        degree = max(parse_cycles(p).degree for p in parts)
    return [parse_cycles(p, degree) for p in parts]


# --------------------------------------------------------------------------
# groups


def _closure(gens: np.ndarray, cap: int | None) -> np.ndarray:
    n = gens.shape[1]
    ident = np.arange(n, dtype=gens.dtype)
    seen = {ident.tobytes()}
    chunks = [ident[None, :]]
    frontier = ident[None, :]
    k = gens.shape[0]
    while len(frontier):
        # row r of gens[j][frontier] is frontier[r] * gens[j]
        cand = gens[np.arange(k)[:, None, None], frontier[None, :, :]].reshape(-1, n)
        fresh = []
        for row in cand:
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(row)
                if cap is not None and len(seen) > cap:
                    raise OrderCapExceeded(cap)
        if not fresh:
            break
        frontier = np.array(fresh)
        chunks.append(frontier)
    return np.concatenate(chunks)


def _dtype_for(n):
    return np.int16 if n < 2**15 else np.int32


class PermGroup:
    """A finitely generated permutation group whose elements are materialised on demand."""

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 _elements: np.ndarray | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("need generators or an explicit degree")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        if _elements is not None:
            self.__dict__["element_array"] = _elements

    @cached_property
    def element_array(self) -> np.ndarray:
        """(order x degree) array of image arrays; row 0 is the identity."""
        return self._materialise(None)

    def _materialise(self, cap):
        dt = _dtype_for(self.degree)
        if not self.generators:
            return np.arange(self.degree, dtype=dt)[None, :]
        gens = np.array([g.images for g in self.generators], dtype=dt)
        return _closure(gens, cap)

    @cached_property
    def _index(self) -> dict[bytes, int]:
        return {row.tobytes(): i for i, row in enumerate(self.element_array)}

    @property
    def order(self) -> int:
        return len(self.element_array)

    def __len__(self):
        return self.order

    @property
    def elements(self) -> list[Permutation]:
        return [Permutation(tuple(int(x) for x in row)) for row in self.element_array]

    def __contains__(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        return self._key(perm) in self._index

    def _key(self, perm: Permutation) -> bytes:
        return np.array(perm.images, dtype=self.element_array.dtype).tobytes()

    def index_of(self, perm: Permutation) -> int:
        return self._index[self._key(perm)]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self):
        return f"<PermGroup degree={self.degree} gens={len(self.generators)}>"


def generate(gens: Sequence[Permutation], cap: int | None = None) -> PermGroup:
    """The group generated by ``gens``; raises OrderCapExceeded past ``cap`` elements."""
    if not gens:
        raise ValueError("need at least one generator")
    group = PermGroup(gens)
    group.__dict__["element_array"] = group._materialise(cap)
    return group


def group_from_elements(rows: np.ndarray, degree: int) -> PermGroup:
    """Wrap an element array that is already known to be closed."""
    gens = [Permutation(tuple(int(x) for x in r)) for r in rows[1:]] or [Permutation.identity(degree)]
    return PermGroup(gens, degree, _elements=rows)


def element_orders(G: PermGroup) -> np.ndarray:
    E = G.element_array.astype(np.int64)
    n = G.degree
    ident = np.arange(n)
    orders = np.zeros(len(E), dtype=np.int64)
    P = E.copy()
    k = 1
    while True:
        done = (P == ident).all(axis=1) & (orders == 0)
        orders[done] = k
        if (orders > 0).all():
            return orders
        P = np.take_along_axis(E, P, axis=1)  # row-wise E^(k+1)
        k += 1


def is_subgroup(H: PermGroup | Sequence[Permutation], G: PermGroup) -> bool:
    gens = H.generators if isinstance(H, PermGroup) else H
    return all(h in G for h in gens)


# --------------------------------------------------------------------------
# orbits, blocks


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def regular_action(G: PermGroup) -> list[tuple[int, ...]]:
    """Images of each generator acting by right multiplication on the element indices."""
    elems = G.element_array
    lookup = G._index
    out = []
    for g in G.generators:
        arr = np.array(g.images, dtype=elems.dtype)
        out.append(tuple(lookup[row.tobytes()] for row in arr[elems]))
    return out


def orbits(G: PermGroup) -> list[frozenset[int]]:
    parent = list(range(G.degree))
    for g in G.generators:
        for i, j in enumerate(g.images):
            a, b = _find(parent, i), _find(parent, j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for i in range(G.degree):
        groups.setdefault(_find(parent, i), set()).add(i)
    return [frozenset(s) for _, s in sorted(groups.items())]


def is_transitive(G: PermGroup) -> bool:
    return len(orbits(G)) == 1


def orbit(G: PermGroup, point: int) -> frozenset[int]:
    return frozenset(int(x) for x in np.unique(G.element_array[:, point]))


def is_doubly_transitive(G: PermGroup) -> bool:
    if not is_transitive(G):
        return False
    if G.degree <= 2:
        return True
    E = G.element_array
    stab = E[E[:, 0] == 0]
    return len(np.unique(stab[:, 1])) == G.degree - 1


@dataclass(frozen=True)
class BlockSystem:
    block_of: tuple[int, ...]
    blocks: tuple[frozenset[int], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def __len__(self):
        return len(self.blocks)


def minimal_block_system_containing(G: PermGroup, seed: Iterable[int]) -> BlockSystem | None:
    """Finest block system with all of ``seed`` in one block; None if that block is everything."""
    if not is_transitive(G):
        raise NotTransitive("block systems need a transitive group")
    seed = sorted(set(seed))
    n = G.degree
    parent = list(range(n))
    pending = []
    for s in seed[1:]:
        a, b = _find(parent, seed[0]), _find(parent, s)
        if a != b:
            parent[max(a, b)] = min(a, b)
            pending.append((seed[0], s))
    while pending:
        a, b = pending.pop()
        for g in G.generators:
            x, y = _find(parent, g.images[a]), _find(parent, g.images[b])
            if x != y:
                parent[max(x, y)] = min(x, y)
                pending.append((g.images[a], g.images[b]))
    roots = [_find(parent, i) for i in range(n)]
    ids = {r: k for k, r in enumerate(sorted(set(roots)))}
    block_of = tuple(ids[r] for r in roots)
    if len(ids) == 1:
        return None
    blocks = [set() for _ in ids]
    for i, k in enumerate(block_of):
        blocks[k].add(i)
    return BlockSystem(block_of, tuple(frozenset(b) for b in blocks))


# --------------------------------------------------------------------------
# cosets, cores, Sylow


def right_coset_labels(G: PermGroup, H: PermGroup) -> np.ndarray:
    """label[k] = index of the right coset H*g_k, numbered by first appearance."""
    E = G.element_array
    HE = H.element_array.astype(np.int64)
    labels = np.full(len(E), -1, dtype=np.int64)
    idx = G._index
    count = 0
    for k in range(len(E)):
        if labels[k] >= 0:
            continue
        coset = E[k][HE]  # rows: h * g_k
        for row in coset.astype(E.dtype):
            labels[idx[row.tobytes()]] = count
        count += 1
    return labels


def coset_action(G: PermGroup, H: PermGroup, gens: Sequence[Permutation] | None = None) -> list[Permutation]:
    """Images of ``gens`` (default: G's generators) acting on right cosets of H.

    Coset 0 is H itself.
    """
    if gens is None:
        gens = G.generators
    labels = right_coset_labels(G, H)
    n_cosets = int(labels.max()) + 1
    E = G.element_array
    reps = np.zeros(n_cosets, dtype=np.int64)
    for k in range(len(E) - 1, -1, -1):
        reps[labels[k]] = k
    out = []
    for g in gens:
        ga = np.array(g.images, dtype=np.int64)
        img = [int(labels[G._index[ga[E[reps[c]]].astype(E.dtype).tobytes()]]) for c in range(n_cosets)]
        out.append(Permutation(tuple(img)))
    return out


def normal_core(G: PermGroup, H: PermGroup | Sequence[Permutation]) -> PermGroup:
    """Largest normal subgroup of G inside H, by intersecting the conjugates t^-1 H t."""
    if not isinstance(H, PermGroup):
        H = generate(list(H)) if H else PermGroup([], G.degree)
    if not is_subgroup(H, G):
        raise ValueError("H is not a subgroup of G")
    E = G.element_array
    labels = right_coset_labels(G, H)
    HE = H.element_array.astype(np.int64)
    core = {row.tobytes() for row in H.element_array}
    seen_cosets = set()
    for k in range(len(E)):
        if labels[k] in seen_cosets:
            continue
        seen_cosets.add(labels[k])
        t = E[k].astype(np.int64)
        tinv = np.argsort(t)
        conj = t[HE[:, tinv]].astype(E.dtype)  # (i) t^-1 h t
        core &= {row.tobytes() for row in conj}
        if len(core) == 1:
            break
    rows = sorted(core, key=lambda b: G._index[b])
    arr = np.array([np.frombuffer(b, dtype=E.dtype) for b in rows])
    return group_from_elements(arr, G.degree)


def has_normal_sylow(G: PermGroup, b: int) -> bool:
    """True iff the Sylow b-subgroup of G is unique (hence normal)."""
    n = G.order
    if n % b:
        raise ValueError(f"{b} does not divide |G| = {n}")
    sylow = 1
    while n % b == 0:
        n //= b
        sylow *= b
    orders = element_orders(G)
    b_power = orders.copy()
    while True:
        hit = (b_power % b == 0)
        if not hit.any():
            break
        b_power[hit] //= b
    n_bpower = int((b_power == 1).sum())
    return n_bpower == sylow


def has_normal_subgroup_of_prime_order(G: PermGroup, b: int) -> bool:
    """Is some cyclic subgroup of order b (b prime) normal in G?"""
    orders = element_orders(G)
    elems = G.elements
    tried = set()
    for k in np.flatnonzero(orders == b):
        g = elems[k]
        H = generate([g])
        key = frozenset(h.images for h in H.elements)
        if key in tried:
            continue
        tried.add(key)
        if all(g.conjugate(x) in H for x in G.generators):
            return True
    return False


def burnside_holds(G: PermGroup) -> bool:
    """A transitive group of prime degree is 2-transitive or has a normal Sylow subgroup."""
    return is_doubly_transitive(G) or has_normal_sylow(G, G.degree)


# --------------------------------------------------------------------------
# involution class representatives


def involution_class_reps(n: int, include_identity: bool = False) -> list[Permutation]:
    """One involution per conjugacy class of Sym(n): (0 1), (0 1)(2 3), ..."""
    start = 0 if include_identity else 1
    return [Permutation.from_cycles([(2 * t, 2 * t + 1) for t in range(k)], n)
            for k in range(start, n // 2 + 1)]


# component kinds of the graph on the points with r0- and r2-edges
SINGLE, EDGE0, EDGE2, DOUBLE, SQUARE = range(5)
_KIND_SIZE = (1, 2, 2, 2, 4)


def pair_component_type(r0: Permutation, r2: Permutation) -> tuple[int, int, int, int, int]:
    """Counts of (fixed point, r0-only edge, r2-only edge, double edge, alternating square).

    This is a complete conjugacy invariant for commuting pairs of involutions.
    """
    if r0 * r2 != r2 * r0:
        raise ValueError("r0 and r2 do not commute")
    counts = [0] * 5
    seen = set()
    for x in range(r0.degree):
        if x in seen:
            continue
        comp = {x, r0(x), r2(x), r2(r0(x))}
        seen |= comp
        if len(comp) == 1:
            counts[SINGLE] += 1
        elif len(comp) == 4:
            counts[SQUARE] += 1
        elif r0(x) == x:
            counts[EDGE2] += 1
        elif r2(x) == x:
            counts[EDGE0] += 1
        else:
            counts[DOUBLE] += 1
    return tuple(counts)


def _pair_from_type(counts, n):
    r0, r2 = [], []
    x = 0
    for kind, cnt in enumerate(counts):
        for _ in range(cnt):
            if kind == EDGE0:
                r0.append((x, x + 1))
            elif kind == EDGE2:
                r2.append((x, x + 1))
            elif kind == DOUBLE:
                r0.append((x, x + 1))
                r2.append((x, x + 1))
            elif kind == SQUARE:
                r0 += [(x, x + 1), (x + 2, x + 3)]
                r2 += [(x, x + 3), (x + 1, x + 2)]
            x += _KIND_SIZE[kind]
    return Permutation.from_cycles(r0, n), Permutation.from_cycles(r2, n)


def pair_types(n: int):
    """All multisets of component kinds whose sizes sum to n, in a fixed order."""
    for e in range(n // 4 + 1):
        for d in range((n - 4 * e) // 2 + 1):
            for c in range((n - 4 * e - 2 * d) // 2 + 1):
                for b in range((n - 4 * e - 2 * d - 2 * c) // 2 + 1):
                    a = n - 4 * e - 2 * (b + c + d)
                    yield (a, b, c, d, e)


def commuting_involution_pair_reps(n: int) -> list[tuple[Permutation, Permutation]]:
    """One (r0, r2) per Sym(n)-class of commuting pairs of (possibly trivial) involutions."""
    return [_pair_from_type(t, n) for t in pair_types(n)]


def simultaneous_conjugates(perms: Sequence[Permutation], by: Permutation) -> tuple[Permutation, ...]:
    return tuple(p.conjugate(by) for p in perms)


def all_involutions(n: int, include_identity: bool = False) -> list[Permutation]:
    """Every involution on n points (brute force; small n only)."""
    out = []

    def rec(img, free):
        if not free:
            out.append(Permutation(tuple(img)))
            return
        a, rest = free[0], free[1:]
        rec(img, rest)
        for k, b in enumerate(rest):
            img[a], img[b] = b, a
            rec(img, rest[:k] + rest[k + 1:])
            img[a], img[b] = a, b

    rec(list(range(n)), list(range(n)))
    if not include_identity:
        out = [p for p in out if not p.is_identity()]
    return out


def canonical_form(perms: Sequence[Permutation]) -> tuple[tuple[int, ...], ...]:
    """Minimal relabelling of a transitive tuple under simultaneous conjugation.

    For each start point, number the points in breadth-first order (generators
    tried in sequence) and keep the lexicographically least relabelled tuple.
    Two transitive tuples are simultaneously conjugate iff their forms agree.
    """
    imgs = [p.images for p in perms]
    n = len(imgs[0])
    best = None
    for start in range(n):
        label = [-1] * n
        label[start] = 0
        order = [start]
        k = 0
        while k < len(order):
            x = order[k]
            k += 1
            for g in imgs:
                y = g[x]
                if label[y] < 0:
                    label[y] = len(order)
                    order.append(y)
        if len(order) != n:
            raise NotTransitive("canonical_form needs a transitive tuple")
        form = tuple(tuple(label[g[x]] for x in order) for g in imgs)
        if best is None or form < best:
            best = form
    return best


__all__ = [
    "Permutation", "PermGroup", "BlockSystem", "DegreeMismatch", "OrderCapExceeded",
    "NotTransitive", "compose", "generate", "orbits", "orbit", "is_transitive",
    "is_doubly_transitive", "minimal_block_system_containing", "normal_core",
    "has_normal_sylow", "burnside_holds", "involution_class_reps", "commuting_involution_pair_reps",
    "pair_component_type", "parse_cycles", "format_cycles", "parse_generators",
    "element_orders", "coset_action", "all_involutions", "canonical_form",
]
