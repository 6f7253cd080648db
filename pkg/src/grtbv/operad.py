"""The graph operad: partial compositions, the induced Lie bracket, and vectors.

Vectors live on isomorphism-class representatives.  The class of an
unlabelled graph stands for its symmetrisation, so the bracket of two
classes is computed from any labelled representatives by summing the
insertions over all positions (see :func:`bracket`).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .canon import canonical_form
from .graphs import CanonicalGraph, Graph, GraphError, canonicalize, degree


class GraphVector:
    """Finite rational combination of canonical graphs; zero classes are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms: dict[CanonicalGraph, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for g, c in items:
                self.add_term(g, c)

    @classmethod
    def from_graph(cls, g: Graph, coeff=1) -> "GraphVector":
        v = cls()
        v.add_term(g, coeff)
        return v

    def add_term(self, g: Graph, coeff) -> None:
        """Add ``coeff * g`` in place, canonicalising ``g`` first."""
        coeff = Fraction(coeff)
        if not coeff:
            return
        if isinstance(g, CanonicalGraph):
            cg, sign = g, 1
        else:
            cg, sign = canonicalize(g)
        if cg.zero:
            return
        new = self._terms.get(cg, 0) + sign * coeff
        if new:
            self._terms[cg] = new
        else:
            self._terms.pop(cg, None)

    def items(self) -> Iterator[tuple[CanonicalGraph, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda t: (t[0].n, t[0].l, t[0].edges)))

    def graphs(self) -> list[CanonicalGraph]:
        return [g for g, _ in self.items()]

    def coefficient(self, g: Graph) -> Fraction:
        cg, sign = canonicalize(g)
        return sign * self._terms.get(cg, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return self.items()

    def __eq__(self, other):
        if not isinstance(other, GraphVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):  # pragma: no cover - mutable container
        raise TypeError("GraphVector is unhashable")

    def copy(self) -> "GraphVector":
        v = GraphVector()
        v._terms = dict(self._terms)
        return v

    def __add__(self, other: "GraphVector") -> "GraphVector":
        v = self.copy()
        for g, c in other._terms.items():
            v.add_term(g, c)
        return v

    def __sub__(self, other: "GraphVector") -> "GraphVector":
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar) -> "GraphVector":
        scalar = Fraction(scalar)
        v = GraphVector()
        if scalar:
            v._terms = {g: scalar * c for g, c in self._terms.items()}
        return v

    __mul__ = __rmul__

    def homogeneous_parts(self) -> dict[int, "GraphVector"]:
        parts: dict[int, GraphVector] = {}
        for g, c in self._terms.items():
            parts.setdefault(degree(g), GraphVector())._terms[g] = c
        return parts

    def blocks(self) -> dict[tuple[int, int], "GraphVector"]:
        parts: dict[tuple[int, int], GraphVector] = {}
        for g, c in self._terms.items():
            parts.setdefault((g.n, g.l), GraphVector())._terms[g] = c
        return parts

    def degree(self) -> int | None:
        degs = {degree(g) for g in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def __repr__(self):
        if not self._terms:
            return "GraphVector(0)"
        return "GraphVector(" + " + ".join(f"{c}*[{g}]" for g, c in self.items()) + ")"


def vector_sum(vectors: Iterable[GraphVector]) -> GraphVector:
    out = GraphVector()
    for v in vectors:
        for g, c in v._terms.items():
            out.add_term(g, c)
    return out


def _insertion_edges(g1: Graph, i: int, g2: Graph) -> Iterator[tuple]:
    """0-based edge lists of the labelled summands of ``g1 o_i g2``."""
    n, m = g1.n, g2.n
    if not 1 <= i <= n:
        raise GraphError(f"insertion position {i} outside 1..{n}")

    def shift(v):
        return v - 1 if v < i else v + m - 2

    block = range(i - 1, i + m - 1)
    inner = tuple((u + i - 2, v + i - 2) for u, v in g2.edges)
    slots = []  # per g1 edge: list of candidate (a, b)
    for u, v in g1.edges:
        ends_u = block if u == i else (shift(u),)
        ends_v = block if v == i else (shift(v),)
        slots.append([(a, b) for a in ends_u for b in ends_v])
    for choice in itertools.product(*slots):
        yield choice + inner


def insertions(g1: Graph, i: int, g2: Graph) -> Iterator[Graph]:
    """Labelled summands of ``g1 o_i g2``, each with coefficient +1.

    ``g2`` replaces vertex ``i``: its vertices take labels ``i..i+m-1`` and
    later vertices of ``g1`` shift up by ``m-1``.  Every endpoint of a
    ``g1``-edge that sat at ``i`` is reattached to each vertex of ``g2``
    independently.  Edge order: ``E(g1)`` then ``E(g2)``.
    """
    n = g1.n + g2.n - 1
    for edges in _insertion_edges(g1, i, g2):
        yield Graph(n, tuple((u + 1, v + 1) for u, v in edges))


@lru_cache(maxsize=500_000)
def _representative(n: int, cert: tuple) -> CanonicalGraph:
    return CanonicalGraph(n, tuple((u + 1, v + 1) for u, v in cert))


@lru_cache(maxsize=200_000)
def compose(g1: Graph, i: int, g2: Graph) -> GraphVector:
    """``g1 o_i g2`` with every summand canonicalised.

    Summands go straight to the kernel and signs are summed as integers; this
    is the hot loop of every bracket.
    """
    n = g1.n + g2.n - 1
    acc: dict = {}
    for edges in _insertion_edges(g1, i, g2):
        cert, parity, zero, _ = canonical_form(n, edges)
        if not zero:
            acc[cert] = acc.get(cert, 0) + (-1 if parity else 1)
    out = GraphVector()
    for cert, c in acc.items():
        if c:
            out._terms[_representative(n, cert)] = Fraction(c)
    return out


@lru_cache(maxsize=200_000)
def _prelie(a: CanonicalGraph, b: CanonicalGraph) -> GraphVector:
    return vector_sum(compose(a, i, b) for i in range(1, a.n + 1))


def prelie(a: Graph, b: Graph) -> GraphVector:
    """``sum_i a o_i b`` on class representatives."""
    ca, sa = canonicalize(a) if not isinstance(a, CanonicalGraph) else (a, 1)
    cb, sb = canonicalize(b) if not isinstance(b, CanonicalGraph) else (b, 1)
    if ca.zero or cb.zero:
        return GraphVector()
    return (sa * sb) * _prelie(ca, cb)


@lru_cache(maxsize=200_000)
def _bracket_graphs(a: CanonicalGraph, b: CanonicalGraph) -> GraphVector:
    sign = -1 if (degree(a) * degree(b)) % 2 else 1
    return _prelie(a, b) - sign * _prelie(b, a)


def bracket(x: GraphVector, y: GraphVector) -> GraphVector:
    """``[x, y] = sum_i x o_i y - (-1)^{|x||y|} sum_i y o_i x``, bilinearly."""
    out = GraphVector()
    for a, ca in x.items():
        for b, cb in y.items():
            for g, c in _bracket_graphs(a, b).items():
                out.add_term(g, ca * cb * c)
    return out


def symmetrize(g: Graph) -> GraphVector:
    """``(1/n!) sum_sigma sigma(g)`` pushed to classes.

    Every relabelling lands on the class of ``g`` with the same sign, so a
    nonzero class comes back with coefficient 1 and a zero class vanishes.
    """
    out = GraphVector()
    inv = Fraction(1, math.factorial(g.n))
    for perm in itertools.permutations(range(1, g.n + 1)):
        out.add_term(g.relabel(perm), inv)
    return out


def clear_caches() -> None:
    compose.cache_clear()
    _representative.cache_clear()
    _prelie.cache_clear()
    _bracket_graphs.cache_clear()
