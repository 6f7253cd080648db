"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from grtbv.graphs import Graph


@st.composite
def graphs(draw, max_n=6, max_l=9, loops=False, simple=False):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u, n + 1) if u != v or loops]
    if not pairs:
        return Graph(n, ())
    if simple:
        k = draw(st.integers(0, min(max_l, len(pairs))))
        edges = draw(st.permutations(pairs))[:k]
    else:
        edges = draw(st.lists(st.sampled_from(pairs), max_size=max_l))
    return Graph(n, tuple(edges))


@st.composite
def relabelled(draw, g):
    """A random vertex relabelling of ``g`` with shuffled edges, and the edge-order sign."""
    perm = draw(st.permutations(range(1, g.n + 1)))
    order = draw(st.permutations(range(g.l)))
    h = g.relabel(perm)
    h = Graph(g.n, tuple(h.edges[k] for k in order))
    return h, permutation_sign(order)


def permutation_sign(order):
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


@st.composite
def trivalent_graphs(draw, min_n=4, max_n=6):
    """Simple graphs with every vertex at least trivalent: edges are deleted
    from the complete graph in a random order while valences stay >= 3."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    order = draw(st.permutations(pairs))
    keep = draw(st.integers(0, len(pairs)))
    val = {v: n - 1 for v in range(1, n + 1)}
    edges = list(order)
    for u, v in order[keep:]:
        if val[u] > 3 and val[v] > 3:
            edges.remove((u, v))
            val[u] -= 1
            val[v] -= 1
    return Graph(n, tuple(edges))
