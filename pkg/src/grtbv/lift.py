"""Degree-0 cocycles of GC2 and their completion to d_hbar-cocycles.

Starting from ``g0`` with ``d g0 = 0`` the corrections solve
``d g_{p+1} = -delta g_p`` block by block, so that
``(d + hbar delta) sum_p hbar^p g_p`` vanishes to the working order.
"""

from __future__ import annotations

import logging

from .complex import (
    HbarGraphVector,
    basis,
    block_of,
    coords_to_vector,
    differential_d,
    differential_delta,
    matrix_of,
    vector_to_coords,
)
from .graphs import BasisSpec
from .linalg import column_space_rank, kernel_basis, solve
from .operad import GraphVector

log = logging.getLogger(__name__)


class NotACocycleError(ValueError):
    pass


class LiftObstruction(ArithmeticError):
    """``-delta g_p`` is not d-exact inside the searched block."""


def _flags(n: int, l: int, like: BasisSpec | None) -> BasisSpec:
    if like is None:
        return BasisSpec.gc2(n, l)
    return BasisSpec(n, l, like.connected, like.min_valence, like.allow_loops)


def find_degree0_cocycles(loop_order: int, flags: BasisSpec | None = None) -> list[GraphVector]:
    """Representatives of a basis of H^0 at the given loop order.

    Kernel vectors of ``d`` are taken in the solver's order and kept when
    they are independent of the coboundaries and of those already kept.
    """
    n, l = block_of(0, loop_order)
    here = _flags(n, l, flags)
    if n < 1 or not basis(here):
        return []
    ker = kernel_basis(matrix_of("d", here))
    dim = len(basis(here))
    spanning: list[list] = []
    if n >= 2:
        prev = _flags(n - 1, l - 1, flags)
        if basis(prev):
            m = matrix_of("d", prev)
            spanning = [[m.entries.get((i, j), 0) for i in range(m.rows)] for j in range(m.cols)]
    current = column_space_rank(spanning, dim)
    out = []
    for x in ker:
        r = column_space_rank(spanning + [x], dim)
        if r > current:
            spanning.append(x)
            current = r
            v = coords_to_vector(x, here)
            if differential_d(v):
                raise ArithmeticError("kernel vector is not d-closed")
            out.append(v)
    return out


def lift(gamma0: GraphVector, max_order: int, flags: BasisSpec | None = None) -> HbarGraphVector:
    """Complete a degree-0 d-cocycle to ``g0 + g1 hbar + ...`` below ``hbar^max_order``.

    Stops early once ``delta g_p = 0``.  Every step is re-substituted.
    """
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if not gamma0:
        return HbarGraphVector({}, max_order)
    if gamma0.degree() != 0:
        raise NotACocycleError("input must be homogeneous of degree 0")
    if differential_d(gamma0):
        raise NotACocycleError("input is not d-closed")
    comps = {0: gamma0}
    current = gamma0
    for p in range(max_order - 1):
        rhs = differential_delta(current)
        if not rhs:
            log.info("delta vanishes at order %d; series terminates", p)
            break
        nxt = GraphVector()
        for (n, l), part in sorted(rhs.blocks().items()):
            src = _flags(n - 1, l - 1, flags)
            dst = _flags(n, l, flags)
            target = [-c for c in vector_to_coords(part, dst)]
            if n - 1 < 1 or not basis(src):
                raise LiftObstruction(f"order {p + 1}: block ({n - 1},{l - 1}) is empty but -delta g_{p} != 0")
            x = solve(matrix_of("d", src, dst), target)
            if x is None:
                raise LiftObstruction(f"order {p + 1}: -delta g_{p} is not d-exact from block ({n - 1},{l - 1})")
            nxt = nxt + coords_to_vector(x, src)
        if differential_d(nxt) != -1 * rhs:
            raise ArithmeticError(f"order {p + 1} correction failed re-substitution")
        comps[p + 1] = nxt
        current = nxt
    return HbarGraphVector(comps, max_order)
