"""Differentials on graph vectors, their block matrices, and cohomology.

``d = [edge, -]`` and ``delta = [tadpole, -]`` go through the operad
bracket.  The combinatorial shortcuts (vertex splitting, edge addition)
are kept as separate functions and cross-checked in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .graphs import (
    EDGE,
    TADPOLE,
    BasisSpec,
    CanonicalGraph,
    Graph,
    enumerate_basis,
    format_graph,
    parse_graph,
)
from .linalg import SparseRationalMatrix, rank
from .operad import GraphVector, bracket

_EDGE_V = GraphVector.from_graph(EDGE)
_TADPOLE_V = GraphVector.from_graph(TADPOLE)


class OffBasisError(ValueError):
    """A differential produced a term outside the target basis."""


def differential_d(v: GraphVector) -> GraphVector:
    return bracket(_EDGE_V, v)


def differential_delta(v: GraphVector) -> GraphVector:
    return bracket(_TADPOLE_V, v)


def split_vertices_fast(g: Graph) -> GraphVector:
    """``d`` by vertex splitting, valid for loopless graphs whose vertices
    are all at least trivalent.

    Vertex ``j`` becomes ``j, j+1`` joined by a new last edge; incident
    half-edges are distributed with at least two on each side.  Univalent
    and bivalent offspring cancel in the full bracket and are skipped.
    """
    sign = -1 if g.l % 2 == 0 else 1  # -(-1)^{|g|}
    out = GraphVector()
    for j in range(1, g.n + 1):

        def shift(v):
            return v if v <= j else v + 1

        halves = [(k, side) for k, (u, v) in enumerate(g.edges) for side, w in ((0, u), (1, v)) if w == j]
        if len(halves) < 4:
            continue
        for mask in itertools.product((0, 1), repeat=len(halves)):
            if sum(mask) < 2 or len(mask) - sum(mask) < 2:
                continue
            ends = [[shift(u), shift(v)] for u, v in g.edges]
            for (k, side), bit in zip(halves, mask):
                ends[k][side] = j + bit
            es = tuple((a, b) for a, b in ends) + ((j, j + 1),)
            out.add_term(Graph(g.n + 1, es), sign)
    return out


def add_edges_fast(g: Graph) -> GraphVector:
    """``delta`` on a loopless graph: twice the sum over pairs ``u < v`` of
    ``g`` with a new first edge ``u-v``."""
    out = GraphVector()
    for u, v in itertools.combinations(range(1, g.n + 1), 2):
        out.add_term(Graph(g.n, ((u, v),) + g.edges), 2)
    return out


@dataclass
class HbarGraphVector:
    """``sum_p hbar^p * components[p]`` truncated below ``hbar^order``."""

    components: dict[int, GraphVector] = field(default_factory=dict)
    order: int = 1

    def __post_init__(self):
        self.components = {p: v for p, v in self.components.items() if v and 0 <= p < self.order}

    def __getitem__(self, p: int) -> GraphVector:
        return self.components.get(p, GraphVector())

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, HbarGraphVector):
            return NotImplemented
        return self.order == other.order and self.components == other.components

    def __add__(self, other):
        order = min(self.order, other.order)
        ps = set(self.components) | set(other.components)
        return HbarGraphVector({p: self[p] + other[p] for p in ps}, order)

    def __rmul__(self, scalar):
        return HbarGraphVector({p: scalar * v for p, v in self.components.items()}, self.order)

    def powers(self) -> list[int]:
        return sorted(self.components)


def differential_dhbar(v: HbarGraphVector) -> HbarGraphVector:
    out = {}
    for p in range(v.order):
        comp = differential_d(v[p])
        if p >= 1 and v[p - 1]:
            comp = comp + differential_delta(v[p - 1])
        out[p] = comp
    return HbarGraphVector(out, v.order)


@lru_cache(maxsize=None)
def basis(spec: BasisSpec) -> tuple[CanonicalGraph, ...]:
    return tuple(enumerate_basis(spec))


def _target(op: str, spec: BasisSpec) -> BasisSpec:
    if op == "d":
        return BasisSpec(spec.n + 1, spec.l + 1, spec.connected, spec.min_valence, spec.allow_loops)
    if op == "delta":
        return BasisSpec(spec.n, spec.l + 1, spec.connected, spec.min_valence, spec.allow_loops)
    raise ValueError(f"unknown operator {op!r}; expected 'd' or 'delta'")


def apply_op(op: str, v: GraphVector) -> GraphVector:
    if op == "d":
        return differential_d(v)
    if op == "delta":
        return differential_delta(v)
    raise ValueError(f"unknown operator {op!r}; expected 'd' or 'delta'")


@lru_cache(maxsize=None)
def _op_on_graph(op: str, g: CanonicalGraph) -> GraphVector:
    return apply_op(op, GraphVector.from_graph(g))


def matrix_of(op: str, src: BasisSpec, dst: BasisSpec | None = None) -> SparseRationalMatrix:
    """Matrix of ``op`` from the ``src`` block to ``dst`` (rows ``dst``, columns ``src``)."""
    expected = _target(op, src)
    if dst is None:
        dst = expected
    if (dst.n, dst.l) != (expected.n, expected.l):
        raise ValueError(f"{op} maps block ({src.n},{src.l}) to ({expected.n},{expected.l}), not ({dst.n},{dst.l})")
    rows = basis(dst)
    index = {g: i for i, g in enumerate(rows)}
    entries = {}
    for j, g in enumerate(basis(src)):
        for h, c in _op_on_graph(op, g).items():
            if h not in index:
                raise OffBasisError(f"{op}({format_graph(g)}) contains {format_graph(h)} outside target flags")
            entries[(index[h], j)] = c
    return SparseRationalMatrix(len(rows), len(basis(src)), entries)


def block_of(degree_: int, loop_order: int) -> tuple[int, int]:
    """``(n, l)`` of the block with the given degree and loop order."""
    n = degree_ + loop_order + 1
    l = degree_ + 2 * loop_order
    return n, l


def _spec_like(flags: BasisSpec | None, n: int, l: int) -> BasisSpec | None:
    if n < 1 or l < 0:
        return None
    if flags is None:
        return BasisSpec.gc2(n, l)
    return BasisSpec(n, l, flags.connected, flags.min_valence, flags.allow_loops)


def cohomology_dims(degree_: int, loop_order: int, flags: BasisSpec | None = None) -> tuple[int, int, int]:
    """``(dim ker d, rank of incoming d, dim H)`` at one degree and loop order."""
    n, l = block_of(degree_, loop_order)
    here = _spec_like(flags, n, l)
    if here is None or not basis(here):
        return (0, 0, 0)
    out_rank = rank(matrix_of("d", here))
    ker = len(basis(here)) - out_rank
    prev = _spec_like(flags, n - 1, l - 1)
    in_rank = rank(matrix_of("d", prev)) if prev is not None and basis(prev) else 0
    return ker, in_rank, ker - in_rank


def vector_to_coords(v: GraphVector, spec: BasisSpec) -> list[Fraction]:
    rows = basis(spec)
    index = {g: i for i, g in enumerate(rows)}
    x = [Fraction(0)] * len(rows)
    for g, c in v.items():
        if g not in index:
            raise OffBasisError(f"{format_graph(g)} is not in block ({spec.n},{spec.l})")
        x[index[g]] = c
    return x


def coords_to_vector(x, spec: BasisSpec) -> GraphVector:
    return GraphVector({g: c for g, c in zip(basis(spec), x) if c})


# --- text formats ----------------------------------------------------------


def format_graph_vector(v: GraphVector) -> str:
    return "".join(f"{c} * {format_graph(g)}\n" for g, c in v.items())


def parse_graph_vectors(text: str) -> list[GraphVector]:
    """Blank-line-separated vectors of ``p/q * n l : edges`` lines."""
    vectors: list[GraphVector] = []
    current: GraphVector | None = None
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("#"):
            continue
        if not s:
            if current is not None:
                vectors.append(current)
                current = None
            continue
        coeff, _, graph = s.partition("*")
        if current is None:
            current = GraphVector()
        current.add_term(parse_graph(graph.strip()), Fraction(coeff.strip()))
    if current is not None:
        vectors.append(current)
    return vectors


def format_hbar_vector(v: HbarGraphVector) -> str:
    parts = [f"# order {v.order}\n"]
    for p in v.powers():
        parts.append(f"hbar^{p}:\n")
        parts.append(format_graph_vector(v[p]))
    return "".join(parts)


def parse_hbar_vector(text: str) -> HbarGraphVector:
    comps: dict[int, GraphVector] = {}
    order = None
    p = None
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s.startswith("# order"):
            order = int(s.split()[2])
            continue
        if s.startswith("#"):
            continue
        if s.startswith("hbar^") and s.endswith(":"):
            p = int(s[5:-1])
            comps.setdefault(p, GraphVector())
            continue
        if p is None:
            raise ValueError("graph line before any 'hbar^p:' header")
        coeff, _, graph = s.partition("*")
        comps[p].add_term(parse_graph(graph.strip()), Fraction(coeff.strip()))
    if order is None:
        order = max(comps, default=-1) + 1
    return HbarGraphVector(comps, order)


