"""Pure-Python canonical labelling kernel.

Mirrors ``_canon.pyx`` exactly; used when the compiled extension is not
available or when ``GRTBV_PURE=1`` is set.

Vertices are 0-based here.  The canonical form is the lexicographically
least sorted edge list over all leaves of an individualisation/refinement
tree.  Twin vertices (identical neighbourhoods) are swapped by an
automorphism fixing the current search path, so only one member of each
twin class is individualised.
"""


def _adjacency(n, edges):
    adj = [[0] * n for _ in range(n)]
    for u, v in edges:
        if u == v:
            adj[u][u] += 1
        else:
            adj[u][v] += 1
            adj[v][u] += 1
    return adj


def _refine(n, adj, colors):
    ncol = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            row = adj[v]
            nb = sorted((colors[w], row[w]) for w in range(n) if w != v and row[w])
            sigs.append((colors[v], row[v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == ncol:
            return colors
        ncol = len(ranks)


def _twin_classes(n, adj):
    """Return ``rep[v]``: the least vertex that is a twin of ``v``, and the
    parity (0/1) of every twin transposition found."""
    rep = list(range(n))
    odd = False
    for u in range(n):
        if rep[u] != u:
            continue
        for v in range(u + 1, n):
            if rep[v] != v or adj[u][u] != adj[v][v]:
                continue
            ok = True
            for w in range(n):
                if w != u and w != v and adj[u][w] != adj[v][w]:
                    ok = False
                    break
            if ok:
                rep[v] = u
                # edges (u,w) <-> (v,w) swap pairwise, loops at u <-> loops at v
                moved = sum(adj[u][w] for w in range(n) if w != u and w != v) + adj[u][u]
                if moved % 2:
                    odd = True
    return rep, odd


def _perm_parity(order):
    seen = [False] * len(order)
    parity = 0
    for i in range(len(order)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _leaf(edges, colors):
    relabelled = []
    for u, v in edges:
        a, b = colors[u], colors[v]
        relabelled.append((a, b) if a <= b else (b, a))
    order = sorted(range(len(relabelled)), key=lambda k: relabelled[k])
    cert = tuple(relabelled[k] for k in order)
    return cert, _perm_parity(order)


def canonical_form(n, edges):
    """Canonicalise a multigraph on ``n`` vertices.

    ``edges`` is a sequence of 0-based pairs ``(u, v)`` with ``u <= v``.
    Returns ``(cert, parity, zero, labelling)`` where ``cert`` is the sorted
    relabelled edge tuple, ``parity`` the parity of the edge permutation
    from input order to ``cert`` order, ``zero`` whether the class vanishes
    (parallel edges or an odd automorphism) and ``labelling[v]`` the new
    0-based label of ``v``.
    """
    edges = [tuple(e) for e in edges]
    adj = _adjacency(n, edges)
    zero = False
    for u in range(n):
        if adj[u][u] > 1:
            zero = True
        for v in range(u + 1, n):
            if adj[u][v] > 1:
                zero = True
    rep, twin_odd = _twin_classes(n, adj)
    if twin_odd:
        zero = True

    best = None
    best_parity = None
    best_lab = None
    odd_aut = False
    stack = [_refine(n, adj, [0] * n)]
    while stack:
        colors = stack.pop()
        ncol = max(colors) + 1 if n else 0
        if ncol == n:
            cert, parity = _leaf(edges, colors)
            if best is None or cert < best:
                best, best_parity, best_lab = cert, parity, colors
                odd_aut = False
            elif cert == best and parity != best_parity:
                odd_aut = True
            continue
        counts = [0] * ncol
        for c in colors:
            counts[c] += 1
        target = min(c for c in range(ncol) if counts[c] > 1)
        cell = [v for v in range(n) if colors[v] == target]
        seen_reps = set()
        children = []
        for v in cell:
            if rep[v] in seen_reps:
                continue
            seen_reps.add(rep[v])
            new = [2 * c + (1 if (c == target and w != v) else 0) for w, c in enumerate(colors)]
            children.append(_refine(n, adj, new))
        # depth-first, children explored in vertex order
        stack.extend(reversed(children))
    if odd_aut:
        zero = True
    return best, best_parity, zero, tuple(best_lab)
