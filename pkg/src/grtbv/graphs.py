"""Graphs with labelled vertices and an edge order defined up to even permutation.

A :class:`Graph` is a raw labelled graph (1-based labels, edge order
significant).  :func:`canonicalize` maps it to the representative of its
isomorphism class together with the sign relating the two edge orders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .canon import canonical_form


class GraphError(ValueError):
    pass


class ResourceGuardError(RuntimeError):
    """A block is larger than the configured search bound."""


@dataclass(frozen=True, order=True)
class Graph:
    """Vertices ``1..n``; ``edges`` is an ordered tuple of pairs ``(u, v)``, ``u <= v``."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"vertex count must be positive, got {self.n}")
        norm = []
        for e in self.edges:
            u, v = e
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"endpoint of edge {u}-{v} outside 1..{self.n}")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def l(self) -> int:
        return len(self.edges)

    def valences(self) -> list[int]:
        val = [0] * (self.n + 1)
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        return val[1:]

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def is_connected(self) -> bool:
        parent = list(range(self.n + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in range(1, self.n + 1)}) == 1

    def relabel(self, perm) -> "Graph":
        """Apply the vertex map ``v -> perm[v-1]`` keeping the edge order."""
        return Graph(self.n, tuple((perm[u - 1], perm[v - 1]) for u, v in self.edges))

    def swap_edges(self, i: int, j: int) -> "Graph":
        es = list(self.edges)
        es[i], es[j] = es[j], es[i]
        return Graph(self.n, tuple(es))

    def __str__(self):
        return format_graph(self)


@dataclass(frozen=True, order=True)
class CanonicalGraph(Graph):
    """Isomorphism-class representative.  ``zero`` marks classes with ``G = -G``."""

    zero: bool = field(default=False, compare=False)


def canonicalize(g: Graph) -> tuple[CanonicalGraph, int]:
    """Return the canonical representative of ``g`` and the edge-order sign.

    The sign is +1 for zero classes by convention.
    """
    cert, parity, zero, _ = canonical_form(g.n, [(u - 1, v - 1) for u, v in g.edges])
    cg = CanonicalGraph(g.n, tuple((u + 1, v + 1) for u, v in cert), zero=zero)
    if zero:
        return cg, 1
    return cg, -1 if parity else 1


def is_zero_class(g: Graph) -> bool:
    return canonicalize(g)[0].zero


def _edge_perm_sign(src: tuple, dst: tuple) -> int | None:
    """Parity sign of the permutation carrying edge list ``src`` onto ``dst``."""
    if sorted(src) != sorted(dst):
        return None
    pool: dict = {}
    for k, e in enumerate(dst):
        pool.setdefault(e, []).append(k)
    order = [pool[e].pop(0) for e in src]
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


def find_isomorphism(g1: Graph, g2: Graph) -> int | None:
    """Edge-permutation sign of some vertex relabelling ``g1 -> g2``, or None.

    Well defined for nonzero classes only; for zero classes any isomorphism's
    sign is returned.
    """
    if g1.n != g2.n or g1.l != g2.l:
        return None
    c1, s1 = canonicalize(g1)
    c2, s2 = canonicalize(g2)
    if c1.edges != c2.edges:
        return None
    return s1 * s2


def brute_force_canonical(g: Graph) -> tuple[tuple, bool]:
    """Oracle: least sorted edge list over all ``n!`` labellings, and the
    odd-automorphism predicate.  Only for small ``n``."""
    best = None
    auts_odd = False
    has_parallel = len(set(g.edges)) != len(g.edges)
    for perm in itertools.permutations(range(1, g.n + 1)):
        h = g.relabel(perm)
        key = tuple(sorted(h.edges))
        if best is None or key < best:
            best = key
        if key == tuple(sorted(g.edges)):
            s = _edge_perm_sign(h.edges, g.edges)
            if s == -1:
                auts_odd = True
    return best, auts_odd or has_parallel


def degree(g: Graph) -> int:
    """Cohomological degree ``2(n-1) - l``: vertices weigh 2, edges -1."""
    return 2 * (g.n - 1) - g.l


def loop_order(g: Graph) -> int:
    return g.l - g.n + 1


EDGE = CanonicalGraph(2, ((1, 2),))
TADPOLE = CanonicalGraph(1, ((1, 1),))
UNIT = CanonicalGraph(1, ())


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)))


def wheel_graph(spokes: int) -> Graph:
    """Hub 1 joined to a rim cycle on ``2..spokes+1``."""
    rim = list(range(2, spokes + 2))
    es = [(1, r) for r in rim] + [(rim[k], rim[(k + 1) % spokes]) for k in range(spokes)]
    return Graph(spokes + 1, tuple(es))


@dataclass(frozen=True)
class BasisSpec:
    n: int
    l: int
    connected: bool = False
    min_valence: int = 0
    allow_loops: bool = False

    @classmethod
    def gc2(cls, n: int, l: int) -> "BasisSpec":
        return cls(n, l, connected=True, min_valence=3, allow_loops=False)

    def accepts(self, g: Graph) -> bool:
        if g.n != self.n or g.l != self.l:
            return False
        if not self.allow_loops and g.has_loops():
            return False
        if self.connected and not g.is_connected():
            return False
        return min(g.valences()) >= self.min_valence


DEFAULT_SEARCH_BOUND = 2_000_000


def enumerate_basis(spec: BasisSpec, search_bound: int = DEFAULT_SEARCH_BOUND) -> list[CanonicalGraph]:
    """All nonzero classes matching ``spec``, sorted by canonical edge list.

    Graphs are grown one edge at a time from the edgeless graph, deduplicating
    on the canonical form at every level.  Zero classes are kept as
    intermediates because adding an edge can break an odd automorphism.
    ``search_bound`` caps the number of canonicalisations performed.
    """
    n, l = spec.n, spec.l
    if n < 1 or l < 0:
        raise GraphError(f"invalid basis spec n={n}, l={l}")
    max_edges = n * (n - 1) // 2 + (n if spec.allow_loops else 0)
    if l > max_edges:
        return []
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u, n + 1) if u != v or spec.allow_loops]

    def feasible(g: Graph, remaining: int) -> bool:
        deficit = sum(max(0, spec.min_valence - d) for d in g.valences())
        if deficit > 2 * remaining:
            return False
        if spec.connected:
            parent = list(range(n + 1))

            def find(a):
                while parent[a] != a:
                    a = parent[a]
                return a

            for u, v in g.edges:
                parent[find(u)] = find(v)
            comps = len({find(v) for v in range(1, n + 1)})
            if comps - 1 > remaining:
                return False
        return True

    level = {(): CanonicalGraph(n, ())}
    work = 0
    for k in range(l):
        nxt: dict = {}
        for edges in level:
            present = set(edges)
            for p in pairs:
                if p in present:
                    continue
                work += 1
                if work > search_bound:
                    raise ResourceGuardError(
                        f"basis search for n={n}, l={l} exceeded {search_bound} steps at {k} edges "
                        f"({len(level)} graphs in frontier)"
                    )
                g = Graph(n, edges + (p,))
                if not feasible(g, l - k - 1):
                    continue
                cg, _ = canonicalize(g)
                nxt.setdefault(cg.edges, cg)
        level = nxt
    out = [cg for cg in level.values() if not cg.zero and spec.accepts(cg)]
    out.sort(key=lambda c: c.edges)
    return out


# --- text format: "n l : u1-v1 u2-v2 ..." ---------------------------------


def format_graph(g: Graph) -> str:
    body = " ".join(f"{u}-{v}" for u, v in g.edges)
    return f"{g.n} {g.l} : {body}".rstrip()


def parse_graph(line: str) -> Graph:
    try:
        head, _, body = line.partition(":")
        n_s, l_s = head.split()
        n, l = int(n_s), int(l_s)
        edges = []
        for tok in body.split():
            u, v = tok.split("-")
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise GraphError(f"malformed graph line {line!r}") from exc
    if len(edges) != l:
        raise GraphError(f"graph line declares {l} edges but lists {len(edges)}")
    return Graph(n, tuple(edges))


def parse_graphs(text: str) -> list[Graph]:
    out = []
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        out.append(parse_graph(s))
    return out
