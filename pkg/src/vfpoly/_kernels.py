"""Hot inner loops: the vertex-CPR search cell and coset enumeration.

Every function here takes and returns plain numpy integer arrays so it can be
compiled by numba or run interpreted (see ``_accel``).  Permutations are image
arrays; the product ``a*b`` acts left to right, ``(i)(a*b) = b[a[i]]``.
"""

import numpy as np

from ._accel import jit

_HASH_MASK = (1 << 48) - 1


@jit
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@jit
def perm_order(a, seen):
    """Order of the permutation ``a`` (lcm of its cycle lengths)."""
    n = a.shape[0]
    for i in range(n):
        seen[i] = False
    order = 1
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                length += 1
            order = order * length // _gcd(order, length)
    return order


@jit
def _is_transitive3(r0, r1, r2, start, seen, queue):
    n = r0.shape[0]
    for i in range(n):
        seen[i] = False
    seen[start] = True
    queue[0] = start
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for y in (r0[x], r1[x], r2[x]):
            if not seen[y]:
                seen[y] = True
                queue[tail] = y
                tail += 1
    return tail == n


@jit
def _row_hash(row):
    h = 1469598103934665603
    for i in range(row.shape[0]):
        h = (h ^ row[i]) * 1099511628211
    return h


@jit
def capped_order3(r0, r1, r2, cap, elems, slots):
    """Order of <r0, r1, r2>, or -1 once it exceeds ``cap``.

    ``elems`` must hold ``cap + 1`` rows; ``slots`` is an open addressing
    table whose size is a power of two larger than ``2 * cap``.
    """
    n = r0.shape[0]
    mask = slots.shape[0] - 1
    for i in range(slots.shape[0]):
        slots[i] = -1
    for i in range(n):
        elems[0, i] = i
    slots[_row_hash(elems[0]) & mask] = 0
    count = 1
    head = 0
    new = np.empty(n, dtype=np.int64)
    while head < count:
        for g in range(3):
            if g == 0:
                gen = r0
            elif g == 1:
                gen = r1
            else:
                gen = r2
            for i in range(n):
                new[i] = gen[elems[head, i]]
            h = _row_hash(new) & mask
            found = False
            while slots[h] >= 0:
                e = slots[h]
                same = True
                for i in range(n):
                    if elems[e, i] != new[i]:
                        same = False
                        break
                if same:
                    found = True
                    break
                h = (h + 1) & mask
            if not found:
                if count >= cap:
                    return -1
                slots[h] = count
                for i in range(n):
                    elems[count, i] = new[i]
                count += 1
        head += 1
    return count


@jit
def _dihedral_elements(a, b, m, out):
    """Rows of out <- the 2m elements of <a, b> where ab has order m."""
    n = a.shape[0]
    ab = np.empty(n, dtype=np.int64)
    for i in range(n):
        ab[i] = b[a[i]]
        out[0, i] = i
    for k in range(1, m):
        for i in range(n):
            out[k, i] = ab[out[k - 1, i]]
    for k in range(m):
        for i in range(n):
            out[m + k, i] = a[out[k, i]]  # a * (ab)^k
    return 2 * m


@jit
def intersection_is_r1(r0, r1, r2, p, q):
    """<r0, r1> meets <r1, r2> exactly in {1, r1}."""
    n = r0.shape[0]
    d01 = np.empty((2 * p, n), dtype=np.int64)
    d12 = np.empty((2 * q, n), dtype=np.int64)
    _dihedral_elements(r1, r0, p, d01)
    _dihedral_elements(r1, r2, q, d12)
    common = 0
    for x in range(2 * p):
        for y in range(2 * q):
            same = True
            for i in range(n):
                if d01[x, i] != d12[y, i]:
                    same = False
                    break
            if same:
                common += 1
                break
    # identity and r1 always lie in both
    return common == 2


@jit
def search_cell(r0, r2, u):
    """All r1 completing (r0, r2) to a vertex-faithful polyhedron on these points.

    ``u`` is the base vertex (fixed by r2, moved by r0).  r1 ranges over every
    nonidentity involution fixing ``u``.  Survivors satisfy: transitivity,
    |<r0, r1, r2>| = 2*v*q (so the stabiliser of ``u`` is exactly <r1, r2>),
    q <= v, integral face counts, and the intersection condition.
    Returns ``(rows, count)``; the first ``count`` rows are the r1 images.
    """
    v = r0.shape[0]
    n = v - 1
    others = np.empty(n, dtype=np.int64)
    k = 0
    for i in range(v):
        if i != u:
            others[k] = i
            k += 1

    seen = np.zeros(v, dtype=np.bool_)
    queue = np.empty(v, dtype=np.int64)
    prod = np.empty(v, dtype=np.int64)
    cap_max = 2 * v * v
    elems = np.empty((cap_max + 1, v), dtype=np.int64)
    tsize = 1
    while tsize < 4 * cap_max:
        tsize *= 2
    slots = np.empty(tsize, dtype=np.int64)

    out = np.empty((16, v), dtype=np.int64)
    n_out = 0

    r1 = np.arange(v)
    assigned = np.zeros(n, dtype=np.bool_)
    st_a = np.empty(n, dtype=np.int64)
    st_b = np.empty(n, dtype=np.int64)
    depth = 0
    descending = True
    while True:
        if descending:
            a = -1
            for t in range(n):
                if not assigned[t]:
                    a = t
                    break
            if a >= 0:
                st_a[depth] = a
                st_b[depth] = a
                assigned[a] = True
                depth += 1
                continue
            # complete matching in r1: evaluate it
            nontrivial = False
            for i in range(v):
                if r1[i] != i:
                    nontrivial = True
                    break
            if nontrivial:
                for i in range(v):
                    prod[i] = r2[r1[i]]
                q = perm_order(prod, seen)
                if 2 <= q <= v:
                    for i in range(v):
                        prod[i] = r1[r0[i]]
                    p = perm_order(prod, seen)
                    if p >= 2 and (v * q) % p == 0 and (v * q) % 2 == 0:
                        if _is_transitive3(r0, r1, r2, u, seen, queue):
                            target = 2 * v * q
                            got = capped_order3(r0, r1, r2, target, elems, slots)
                            if got == target and intersection_is_r1(r0, r1, r2, p, q):
                                if n_out == out.shape[0]:
                                    bigger = np.empty((2 * n_out, v), dtype=np.int64)
                                    bigger[:n_out] = out
                                    out = bigger
                                for i in range(v):
                                    out[n_out, i] = r1[i]
                                n_out += 1
            descending = False
        # backtrack to the next option
        moved = False
        while depth > 0:
            d = depth - 1
            a = st_a[d]
            b = st_b[d]
            assigned[a] = False
            if b != a:
                assigned[b] = False
                r1[others[a]] = others[a]
                r1[others[b]] = others[b]
            c = b + 1
            while c < n and assigned[c]:
                c += 1
            if c < n:
                st_b[d] = c
                assigned[a] = True
                assigned[c] = True
                r1[others[a]] = others[c]
                r1[others[c]] = others[a]
                moved = True
                break
            depth -= 1
        if not moved:
            break
        descending = True
    return out, n_out


# --------------------------------------------------------------------------
# Orderly search over vertex coset tables.
#
# Points are numbered in breadth-first order from the base vertex 0, so each
# labelled action is met once.  Relators (r0 r2)^2, (r0 r1)^p, (r1 r2)^q are
# scanned through every new entry; a scan with one gap left forces that entry.


@jit
def _scan(g, rel, length, x, trail, nt, dq, nq):
    f = x
    i = 0
    while i < length:
        t = g[rel[i], f]
        if t < 0:
            break
        f = t
        i += 1
    if i == length:
        return f == x, nt, nq
    b = x
    j = length - 1
    while j >= i:
        t = g[rel[j], b]
        if t < 0:
            break
        b = t
        j -= 1
    if j < i:
        return f == b, nt, nq
    if j == i:
        k = rel[i]
        if g[k, b] >= 0 and g[k, b] != f:
            return False, nt, nq
        g[k, f] = b
        trail[nt, 0] = k
        trail[nt, 1] = f
        nt += 1
        if b != f:
            g[k, b] = f
            trail[nt, 0] = k
            trail[nt, 1] = b
            nt += 1
        dq[nq, 0] = k
        dq[nq, 1] = f
        nq += 1
        dq[nq, 0] = k
        dq[nq, 1] = b
        nq += 1
    return True, nt, nq


@jit
def _propagate(g, rels, lens, first, trail, nt, dq, nq):
    h = 0
    while h < nq:
        k = dq[h, 0]
        x = dq[h, 1]
        h += 1
        for r in range(rels.shape[0]):
            if first[r] != k:
                continue
            ok, nt, nq = _scan(g, rels[r], lens[r], x, trail, nt, dq, nq)
            if not ok:
                return False, nt
            if nq >= dq.shape[0] - 4:
                m = nq - h
                for s in range(m):
                    dq[s, 0] = dq[h + s, 0]
                    dq[s, 1] = dq[h + s, 1]
                nq = m
                h = 0
    return True, nt


@jit
def _leaf_ok(g, p, q, v, seen, queue, elems, slots):
    r0 = g[0]
    r1 = g[1]
    r2 = g[2]
    moved = False
    for i in range(v):
        if r1[i] != i:
            moved = True
            break
    if not moved:
        return False
    prod = np.empty(v, dtype=np.int64)
    for i in range(v):
        prod[i] = r2[r1[i]]
    if perm_order(prod, seen) != q:
        return False
    for i in range(v):
        prod[i] = r1[r0[i]]
    if perm_order(prod, seen) != p:
        return False
    # the <r0, r1>-orbit of the base vertex has exactly p points
    for i in range(v):
        seen[i] = False
    seen[0] = True
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for y in (r0[x], r1[x]):
            if not seen[y]:
                seen[y] = True
                queue[tail] = y
                tail += 1
    if tail != p:
        return False
    target = 2 * v * q
    if capped_order3(r0, r1, r2, target, elems, slots) != target:
        return False
    return intersection_is_r1(r0, r1, r2, p, q)


@jit
def search_tables(v, p, q):
    """Vertex actions of polyhedra of type {p, q} with v vertices, base vertex 0.

    Returns ``(triples, count)``: ``triples[k]`` holds the images of r0, r1, r2.
    Every returned triple is transitive, has the exact orders p and q, group
    order 2*v*q (so the stabiliser of 0 is <r1, r2>), and passes the
    intersection condition.
    """
    lmax = max(4, 2 * p, 2 * q)
    rels = np.zeros((6, lmax), dtype=np.int64)
    lens = np.zeros(6, dtype=np.int64)
    first = np.zeros(6, dtype=np.int64)
    rules = ((0, 2, 2), (2, 0, 2), (0, 1, p), (1, 0, p), (1, 2, q), (2, 1, q))
    for r in range(6):
        a, b, m = rules[r]
        for s in range(m):
            rels[r, 2 * s] = a
            rels[r, 2 * s + 1] = b
        lens[r] = 2 * m
        first[r] = a

    g = -np.ones((3, v), dtype=np.int64)
    trail = np.empty((3 * v + 2, 2), dtype=np.int64)
    dq = np.empty((64 * v, 2), dtype=np.int64)
    fc = np.empty(3 * v, dtype=np.int64)
    fk = np.empty(3 * v, dtype=np.int64)
    fch = np.empty(3 * v, dtype=np.int64)
    fn = np.empty(3 * v, dtype=np.int64)
    ft = np.empty(3 * v, dtype=np.int64)

    seen = np.zeros(v, dtype=np.bool_)
    queue = np.empty(v, dtype=np.int64)
    cap = 2 * v * q
    elems = np.empty((cap + 1, v), dtype=np.int64)
    tsize = 1
    while tsize < 4 * cap:
        tsize *= 2
    slots = np.empty(tsize, dtype=np.int64)
    out = np.empty((8, 3, v), dtype=np.int64)
    n_out = 0

    g[1, 0] = 0
    g[2, 0] = 0
    nt = 2
    trail[0, 0] = 1
    trail[0, 1] = 0
    trail[1, 0] = 2
    trail[1, 1] = 0
    dq[0, 0] = 1
    dq[0, 1] = 0
    dq[1, 0] = 2
    dq[1, 1] = 0
    ok, nt = _propagate(g, rels, lens, first, trail, nt, dq, 2)
    if not ok:
        return out, 0

    depth = 0
    ndef = 1
    select = True
    while True:
        if select:
            c = -1
            k = -1
            for cc in range(ndef):
                for kk in range(3):
                    if g[kk, cc] < 0:
                        c = cc
                        k = kk
                        break
                if c >= 0:
                    break
            if c < 0:
                if ndef == v and _leaf_ok(g, p, q, v, seen, queue, elems, slots):
                    if n_out == out.shape[0]:
                        bigger = np.empty((2 * n_out, 3, v), dtype=np.int64)
                        bigger[:n_out] = out
                        out = bigger
                    out[n_out] = g
                    n_out += 1
            else:
                fc[depth] = c
                fk[depth] = k
                fch[depth] = c - 1
                fn[depth] = ndef
                ft[depth] = nt
                depth += 1
        select = False
        while depth > 0:
            d = depth - 1
            c = fc[d]
            k = fk[d]
            while nt > ft[d]:
                nt -= 1
                g[trail[nt, 0], trail[nt, 1]] = -1
            ndef = fn[d]
            # next image for c under generator k: c itself, an open older
            # point, or a brand new point
            y = fch[d] + 1
            last = ndef if ndef < v else ndef - 1
            while y <= last and y < ndef and g[k, y] >= 0:
                y += 1
            if y > last:
                depth -= 1
                continue
            fch[d] = y
            if y == ndef:
                ndef += 1
            g[k, c] = y
            trail[nt, 0] = k
            trail[nt, 1] = c
            nt += 1
            if y != c:
                g[k, y] = c
                trail[nt, 0] = k
                trail[nt, 1] = y
                nt += 1
            dq[0, 0] = k
            dq[0, 1] = c
            dq[1, 0] = k
            dq[1, 1] = y
            ok, nt = _propagate(g, rels, lens, first, trail, nt, dq, 2)
            if ok:
                select = True
                break
        if not select:
            break
    return out, n_out


# --------------------------------------------------------------------------
# Coset enumeration (HLT with union-find coincidence handling).
# Generators are involutions, so each table column is its own inverse.


@jit
def _rep(parent, c):
    root = c
    while parent[root] != root:
        root = parent[root]
    while parent[c] != root:
        nxt = parent[c]
        parent[c] = root
        c = nxt
    return root


@jit
def _merge(parent, queue, qlen, a, b):
    ra = _rep(parent, a)
    rb = _rep(parent, b)
    if ra == rb:
        return qlen
    lo = min(ra, rb)
    hi = max(ra, rb)
    parent[hi] = lo
    queue[qlen] = hi
    return qlen + 1


@jit
def _coincidence(table, parent, queue, a, b, ngens):
    qlen = _merge(parent, queue, 0, a, b)
    i = 0
    while i < qlen:
        g = queue[i]
        i += 1
        for x in range(ngens):
            d = table[g, x]
            if d >= 0:
                if table[d, x] == g:
                    table[d, x] = -1
                mu = _rep(parent, g)
                nu = _rep(parent, d)
                if table[mu, x] >= 0:
                    qlen = _merge(parent, queue, qlen, nu, table[mu, x])
                elif table[nu, x] >= 0:
                    qlen = _merge(parent, queue, qlen, mu, table[nu, x])
                else:
                    table[mu, x] = nu
                    table[nu, x] = mu


@jit
def _grow(table, parent, queue):
    size = table.shape[0]
    t2 = np.full((2 * size, table.shape[1]), -1, dtype=np.int64)
    t2[:size] = table
    p2 = np.arange(2 * size)
    p2[:size] = parent
    q2 = np.empty(2 * size, dtype=np.int64)
    return t2, p2, q2


@jit
def coset_enumerate(words, lengths, n_sub, ngens, limit):
    """Enumerate cosets of the subgroup generated by the first ``n_sub`` words.

    The remaining words are relators.  Returns ``(table, n_defined, parent, status)``
    with status 0 on success and 1 when more than ``limit`` cosets would be
    needed.  Dead rows are left in place; callers compact with ``parent``.
    """
    size = 64
    table = np.full((size, ngens), -1, dtype=np.int64)
    parent = np.arange(size)
    queue = np.empty(size, dtype=np.int64)
    n_defined = 1
    n_live = 1

    for w in range(words.shape[0]):
        alpha = 0
        is_sub = w < n_sub
        if not is_sub:
            continue
        # scan and fill subgroup generators at the base coset
        ln = lengths[w]
        f = alpha
        i = 0
        b = alpha
        j = ln - 1
        while True:
            while i <= j and table[f, words[w, i]] >= 0:
                f = table[f, words[w, i]]
                i += 1
            if i > j:
                if f != b:
                    _coincidence(table, parent, queue, f, b, ngens)
                break
            while j >= i and table[b, words[w, j]] >= 0:
                b = table[b, words[w, j]]
                j -= 1
            if j < i:
                _coincidence(table, parent, queue, f, b, ngens)
                break
            elif i == j:
                table[f, words[w, i]] = b
                table[b, words[w, i]] = f
                break
            else:
                if n_defined >= limit:
                    return table, n_defined, parent, 1
                if n_defined >= size:
                    table, parent, queue = _grow(table, parent, queue)
                    size = table.shape[0]
                c = n_defined
                n_defined += 1
                table[f, words[w, i]] = c
                table[c, words[w, i]] = f

    alpha = 0
    while alpha < n_defined:
        if parent[alpha] == alpha:
            for w in range(n_sub, words.shape[0]):
                if parent[alpha] != alpha:
                    break
                ln = lengths[w]
                f = alpha
                i = 0
                b = alpha
                j = ln - 1
                while True:
                    while i <= j and table[f, words[w, i]] >= 0:
                        f = table[f, words[w, i]]
                        i += 1
                    if i > j:
                        if f != b:
                            _coincidence(table, parent, queue, f, b, ngens)
                        break
                    while j >= i and table[b, words[w, j]] >= 0:
                        b = table[b, words[w, j]]
                        j -= 1
                    if j < i:
                        _coincidence(table, parent, queue, f, b, ngens)
                        break
                    elif i == j:
                        table[f, words[w, i]] = b
                        table[b, words[w, i]] = f
                        break
                    else:
                        if n_defined >= limit:
                            return table, n_defined, parent, 1
                        if n_defined >= size:
                            table, parent, queue = _grow(table, parent, queue)
                            size = table.shape[0]
                        c = n_defined
                        n_defined += 1
                        table[f, words[w, i]] = c
                        table[c, words[w, i]] = f
            if parent[alpha] == alpha:
                for x in range(ngens):
                    if table[alpha, x] < 0:
                        if n_defined >= limit:
                            return table, n_defined, parent, 1
                        if n_defined >= size:
                            table, parent, queue = _grow(table, parent, queue)
                            size = table.shape[0]
                        c = n_defined
                        n_defined += 1
                        table[alpha, x] = c
                        table[c, x] = alpha
        alpha += 1
    return table, n_defined, parent, 0


@jit
def standardize(table, n_defined, parent, ngens):
    """Compact live cosets, renumbered in breadth-first order from coset 0."""
    label = np.full(n_defined, -1, dtype=np.int64)
    order = np.empty(n_defined, dtype=np.int64)
    label[0] = 0
    order[0] = 0
    count = 1
    head = 0
    while head < count:
        c = order[head]
        head += 1
        for x in range(ngens):
            d = _rep(parent, table[c, x])
            if label[d] < 0:
                label[d] = count
                order[count] = d
                count += 1
    out = np.empty((count, ngens), dtype=np.int64)
    for k in range(count):
        c = order[k]
        for x in range(ngens):
            out[k, x] = label[_rep(parent, table[c, x])]
    return out
