# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled canonical labelling kernel.

Same algorithm and output as :mod:`grtbv._canon_py`; adjacency, colour
arrays and the leaf certificate are kept in C arrays.
"""

from libc.stdlib cimport free, malloc, qsort
from libc.string cimport memcpy

cdef enum:
    MAXN = 64


# Row-major signature table read by the qsort comparator; the GIL is held
# throughout so one shared table is safe.
cdef int* _sig
cdef int* _siglen
cdef int _stride


cdef int _cmp_sig(const void* pa, const void* pb) noexcept nogil:
    cdef int a = (<const int*> pa)[0]
    cdef int b = (<const int*> pb)[0]
    cdef int* ra = _sig + a * _stride
    cdef int* rb = _sig + b * _stride
    cdef int la = _siglen[a], lb = _siglen[b], k
    for k in range(la if la < lb else lb):
        if ra[k] != rb[k]:
            return -1 if ra[k] < rb[k] else 1
    return (la > lb) - (la < lb)


cdef int _refine(int n, int* adj, int* colors) except -1:
    """Colour refinement; signatures compare like the fallback's tuples."""
    global _sig, _siglen, _stride
    cdef int v, w, k, j, ncol, newcol, c0, k0
    cdef int* row
    cdef int order[MAXN]
    cdef int fresh[MAXN]
    cdef int sig[MAXN * 2 * MAXN]
    cdef int siglen[MAXN]
    cdef bint seen[2 * MAXN + 2]
    _sig, _siglen, _stride = sig, siglen, 2 * n
    ncol = 0
    for v in range(2 * n + 2):
        seen[v] = False
    for v in range(n):
        if not seen[colors[v]]:
            seen[colors[v]] = True
            ncol += 1
    while True:
        for v in range(n):
            row = sig + v * 2 * n
            row[0] = colors[v]
            row[1] = adj[v * n + v]
            k = 2
            for w in range(n):
                if w != v and adj[v * n + w]:
                    c0 = colors[w]
                    k0 = adj[v * n + w]
                    # insertion sort on (colour, multiplicity) pairs
                    j = k
                    while j > 2 and (row[j - 2] > c0 or (row[j - 2] == c0 and row[j - 1] > k0)):
                        row[j] = row[j - 2]
                        row[j + 1] = row[j - 1]
                        j -= 2
                    row[j] = c0
                    row[j + 1] = k0
                    k += 2
            siglen[v] = k
            order[v] = v
        qsort(order, n, sizeof(int), _cmp_sig)
        newcol = 0
        for j in range(n):
            if j and _cmp_sig(&order[j - 1], &order[j]):
                newcol += 1
            fresh[order[j]] = newcol
        newcol += 1
        for v in range(n):
            colors[v] = fresh[v]
        if newcol == ncol:
            return 0
        ncol = newcol


cdef int _perm_parity(int m, int* order):
    cdef int i, j, length, parity = 0
    cdef char* seen = <char*> malloc(m + 1)
    for i in range(m):
        seen[i] = 0
    for i in range(m):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = 1
            j = order[j]
            length += 1
        parity ^= (length - 1) & 1
    free(seen)
    return parity


cdef tuple _leaf(int m, int* eu, int* ev, int* colors, int* parity_out):
    cdef int k, a, b
    cdef list rel = []
    for k in range(m):
        a = colors[eu[k]]
        b = colors[ev[k]]
        if a <= b:
            rel.append((a, b, k))
        else:
            rel.append((b, a, k))
    rel.sort()
    cdef int* order = <int*> malloc((m + 1) * sizeof(int))
    for k in range(m):
        order[k] = rel[k][2]
    parity_out[0] = _perm_parity(m, order)
    free(order)
    return tuple([(t[0], t[1]) for t in rel])


def canonical_form(int n, edges):
    """See :func:`grtbv._canon_py.canonical_form`."""
    if n > MAXN:
        raise ValueError("compiled kernel supports at most %d vertices" % MAXN)
    cdef int m = len(edges)
    cdef int i, u, v, w, c, target, moved, ncol, parity
    cdef int* adj = <int*> malloc((n * n + 1) * sizeof(int))
    cdef int* eu = <int*> malloc((m + 1) * sizeof(int))
    cdef int* ev = <int*> malloc((m + 1) * sizeof(int))
    cdef int rep[MAXN]
    cdef int counts[MAXN]
    cdef int colors[MAXN]
    cdef int child[MAXN]
    cdef bint zero = False, twin_odd = False, odd_aut = False, ok
    best = None
    best_parity = -1
    best_lab = None
    try:
        for i in range(n * n):
            adj[i] = 0
        for i, (u, v) in enumerate(edges):
            eu[i] = u
            ev[i] = v
            if u == v:
                adj[u * n + u] += 1
            else:
                adj[u * n + v] += 1
                adj[v * n + u] += 1
        for u in range(n):
            if adj[u * n + u] > 1:
                zero = True
            for v in range(u + 1, n):
                if adj[u * n + v] > 1:
                    zero = True

        for u in range(n):
            rep[u] = u
        for u in range(n):
            if rep[u] != u:
                continue
            for v in range(u + 1, n):
                if rep[v] != v or adj[u * n + u] != adj[v * n + v]:
                    continue
                ok = True
                for w in range(n):
                    if w != u and w != v and adj[u * n + w] != adj[v * n + w]:
                        ok = False
                        break
                if ok:
                    rep[v] = u
                    moved = adj[u * n + u]
                    for w in range(n):
                        if w != u and w != v:
                            moved += adj[u * n + w]
                    if moved % 2:
                        twin_odd = True
        if twin_odd:
            zero = True

        for i in range(n):
            colors[i] = 0
        _refine(n, adj, colors)
        stack = [[colors[i] for i in range(n)]]
        while stack:
            cur = stack.pop()
            ncol = 0
            for i in range(n):
                colors[i] = cur[i]
                if colors[i] + 1 > ncol:
                    ncol = colors[i] + 1
            if ncol == n:
                cert = _leaf(m, eu, ev, colors, &parity)
                if best is None or cert < best:
                    best = cert
                    best_parity = parity
                    best_lab = tuple(cur)
                    odd_aut = False
                elif cert == best and parity != best_parity:
                    odd_aut = True
                continue
            for c in range(ncol):
                counts[c] = 0
            for i in range(n):
                counts[colors[i]] += 1
            target = -1
            for c in range(ncol):
                if counts[c] > 1:
                    target = c
                    break
            seen_reps = set()
            children = []
            for v in range(n):
                if colors[v] != target or rep[v] in seen_reps:
                    continue
                seen_reps.add(rep[v])
                for w in range(n):
                    c = colors[w]
                    child[w] = 2 * c + (1 if (c == target and w != v) else 0)
                _refine(n, adj, child)
                children.append([child[w] for w in range(n)])
            children.reverse()
            stack.extend(children)
    finally:
        free(adj)
        free(eu)
        free(ev)
    if odd_aut:
        zero = True
    return best, best_parity, zero, best_lab
