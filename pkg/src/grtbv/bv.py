"""Graphs acting on Darboux polynomials, and the flow of master functions.

For a labelled graph the operator is

    Phi(S_1, ..., S_n) = mult( D_{e_1} ... D_{e_l} (S_1^(1) ... S_n^(n)) )

with ``D_e = sum_a d/dx^a_(i) d/dpsi_a(j) + d/dpsi_a(i) d/dx^a_(j)`` for an
edge ``e = (i, j)``; the last edge acts first.  A loop gives twice the BV
Laplacian, the edge graph gives ``(-1)^|f| {f, g}``.

Under this representation the Maurer-Cartan element ``edge + hbar*tadpole``
maps to ``2*hbar*Delta + {,}``, i.e. twice the quantum master operator, and
the vector field of an hbar-graph vector ``G`` at ``S`` is
``sum_p hbar^p Phi(G_p)(S, ..., S) / n!``.
"""

from __future__ import annotations

import itertools
import random
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complex import HbarGraphVector, differential_d, differential_delta
from .graphs import EDGE, Graph, canonicalize
from .operad import GraphVector
from .superpoly import (
    SuperPolynomial,
    SpaceMismatch,
    Truncation,
    bv_laplacian,
    multiply,
    odd_bracket,
    partial,
    qme_residual,
    sum_polys,
)


class ArityError(ValueError):
    pass


class NotAMasterFunction(ValueError):
    pass


def _common(args: Sequence[SuperPolynomial]):
    space = args[0].space
    for a in args[1:]:
        if a.space != space:
            raise SpaceMismatch("arguments live on different Darboux spaces")
    return space, args[0].trunc


def _phi_homogeneous(edges, polys, parities, space, trunc):
    n = len(polys)
    cpar = space.parities
    size = space.size
    maxe = [p.max_exponents() for p in polys]
    maxdeg = [p.poly_degree() for p in polys]
    rem = [0] * n
    for u, v in edges:
        rem[u] += 1
        rem[v] += 1
    zero = (0,) * size
    states: dict[tuple, int] = {(zero,) * n: 1}

    odd = [c for c in range(size) if cpar[c]]
    slots = [(2 * a, 2 * a + 1) for a in range(space.pairs)]
    slots = [pair for ab in slots for pair in (ab, ab[::-1])]

    def allowed(alpha, k, c):
        if cpar[c] and alpha[c]:
            return False
        return alpha[c] < maxe[k][c] and sum(alpha) + 1 + rem[k] <= maxdeg[k]

    def within(alpha, c):
        return sum(alpha[cc] for cc in odd if cc < c)

    def bump(alpha, c):
        new = list(alpha)
        new[c] += 1
        return tuple(new)

    for u, v in reversed(edges):
        rem[u] -= 1
        rem[v] -= 1
        nxt: dict[tuple, int] = {}
        for key, coef in states.items():
            pre = [0] * (n + 1)
            for k in range(n):
                pre[k + 1] = pre[k] + parities[k] + sum(key[k][c] for c in odd)
            av = key[v]
            for ci, cj in slots:
                if not allowed(av, v, cj):
                    continue
                sign = cpar[cj] * (pre[v] + within(av, cj))
                av2 = bump(av, cj)
                au = av2 if u == v else key[u]
                if not allowed(au, u, ci):
                    continue
                shift = cpar[cj] if v < u else 0
                sign += cpar[ci] * (pre[u] + shift + within(au, ci))
                au2 = bump(au, ci)
                new = list(key)
                new[v] = av2
                new[u] = au2
                new = tuple(new)
                nxt[new] = nxt.get(new, 0) + (-coef if sign % 2 else coef)
        states = {k: c for k, c in nxt.items() if c}
        if not states:
            return SuperPolynomial.zero(space, trunc)

    cache: dict = {}

    def derived(k, alpha):
        key = (k, alpha)
        if key not in cache:
            f = polys[k]
            for c in range(size - 1, -1, -1):
                for _ in range(alpha[c]):
                    f = partial(f, c)
            cache[key] = f
        return cache[key]

    # sum_states D_0 * (D_1 * (... * D_{n-1})), grouped by shared prefixes so
    # each distinct prefix costs one product
    raw: dict[tuple, dict] = {}
    for key, coef in states.items():
        acc = raw.setdefault(key[:-1], {})
        for mono, c in derived(n - 1, key[-1]).terms.items():
            acc[mono] = acc.get(mono, 0) + coef * c
    level = {head: SuperPolynomial(space, acc, trunc) for head, acc in raw.items()}
    for k in range(n - 2, -1, -1):
        nxt_level: dict[tuple, SuperPolynomial] = {}
        for key, val in level.items():
            if not val:
                continue
            term = multiply(derived(k, key[-1]), val)
            head = key[:-1]
            nxt_level[head] = nxt_level[head] + term if head in nxt_level else term
        level = nxt_level
    return level.get((), SuperPolynomial.zero(space, trunc))


def phi(gamma: Graph, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """The multidifferential operator of a labelled graph, applied to ``args``."""
    if len(args) != gamma.n:
        raise ArityError(f"graph has {gamma.n} vertices but {len(args)} arguments were given")
    space, trunc = _common(args)
    edges = [(u - 1, v - 1) for u, v in gamma.edges]
    parts = [sorted(a.parity_parts().items()) for a in args]
    out = []
    for combo in itertools.product(*parts):
        parities = [p for p, _ in combo]
        polys = [q for _, q in combo]
        out.append(_phi_homogeneous(edges, polys, parities, space, trunc))
    return sum_polys(out, space, trunc)


def phi_sym(gamma: Graph, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """Operator of the class of ``gamma``: the average over vertex relabellings."""
    if len(args) != gamma.n:
        raise ArityError(f"graph has {gamma.n} vertices but {len(args)} arguments were given")
    space, trunc = _common(args)
    mult: Counter = Counter()
    for p in itertools.permutations(range(1, gamma.n + 1)):
        es = gamma.relabel(p).edges
        order = sorted(range(len(es)), key=es.__getitem__)
        mult[tuple(es[i] for i in order)] += _perm_sign(order)
    scale = Fraction(1, math.factorial(gamma.n))
    out = [phi(Graph(gamma.n, es), args) * (scale * m) for es, m in sorted(mult.items()) if m]
    return sum_polys(out, space, trunc)


def _perm_sign(order: Sequence[int]) -> int:
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def phi_vector(v: GraphVector, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """Sum of class operators over the graphs of ``v`` whose arity matches ``args``."""
    space, trunc = _common(args)
    out = [phi_sym(g, args) * c for g, c in v.items() if g.n == len(args)]
    return sum_polys(out, space, trunc)


def phi_hbar(v: HbarGraphVector, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    space, trunc = _common(args)
    return sum_polys((phi_vector(v[p], args).times_hbar(p) for p in v.powers()), space, trunc)


# --- the quantum master operator as a pair of Taylor components -------------


def q_unary(f: SuperPolynomial) -> SuperPolynomial:
    """Image of ``hbar * tadpole``: ``2 hbar Delta``."""
    return (bv_laplacian(f) * 2).times_hbar()


def q_binary(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Image of the edge graph: ``(-1)^|f| {f, g}``."""
    out = SuperPolynomial.zero(f.space, f.trunc)
    for p, fp in f.parity_parts().items():
        b = odd_bracket(fp, g)
        out = out + (-b if p else b)
    return out


def _par(f: SuperPolynomial) -> int:
    p = f.parity()
    if p is None:
        raise ValueError("argument must have homogeneous parity")
    return p


def _koszul(perm: Sequence[int], ps: Sequence[int]) -> int:
    odd = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and ps[perm[i]] and ps[perm[j]]:
                odd ^= 1
    return -1 if odd else 1


def symmetrized(op, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """Average of ``op`` over argument orders with Koszul signs."""
    space, trunc = _common(args)
    ps = [_par(a) for a in args]
    scale = Fraction(1, math.factorial(len(args)))
    out = [
        op([args[i] for i in perm]) * (scale * _koszul(perm, ps))
        for perm in itertools.permutations(range(len(args)))
    ]
    return sum_polys(out, space, trunc)


def ce_differential(gamma: Graph, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """``[Q, Phi_gamma]`` on ``args`` with ``Q = 2 hbar Delta + {,}``.

    The bracket is the symmetrized commutator of partial compositions of
    multilinear maps.  Since both factors are symmetric it reduces to sums
    over unshuffles.  Arity ``n`` picks up the unary part of ``Q``, arity
    ``n + 1`` the binary part.  Arguments must be parity-homogeneous.
    """
    if not args:
        raise ArityError("at least one argument is required")
    n = gamma.n
    space, trunc = _common(args)
    ps = [_par(a) for a in args]
    sg = -1 if gamma.l % 2 else 1  # (-1)^{|Q||G|} with |Q| odd
    out = []
    if len(args) == n:
        out.append(q_unary(phi_sym(gamma, args)))
        for i in range(n):
            inner = list(args)
            inner[i] = q_unary(args[i])
            sign = -1 if sum(ps[:i]) % 2 else 1
            out.append(phi_sym(gamma, inner) * (-sg * sign))
    elif len(args) == n + 1:
        scale = Fraction(2, n + 1)
        for k in range(n + 1):
            rest = list(args[:k]) + list(args[k + 1 :])
            sign = -1 if ps[k] * sum(ps[k + 1 :]) % 2 else 1
            out.append(q_binary(phi_sym(gamma, rest), args[k]) * (scale * sign))
        for i, j in itertools.combinations(range(n + 1), 2):
            rest = [a for m, a in enumerate(args) if m not in (i, j)]
            odd = ps[i] * sum(ps[:i]) + ps[j] * (sum(ps[:j]) - ps[i])
            sign = -1 if odd % 2 else 1
            inner = [q_binary(args[i], args[j])] + rest
            out.append(phi_sym(gamma, inner) * (-sg * sign * scale))
    return sum_polys(out, space, trunc)


def morphism_sides(gamma: Graph, args: Sequence[SuperPolynomial]) -> tuple[SuperPolynomial, SuperPolynomial]:
    """Both sides of ``Phi(d_hbar gamma) = [Q, Phi_gamma]`` on ``args``.

    With ``n`` arguments only ``hbar * Delta gamma`` contributes on the left,
    with ``n + 1`` only ``d gamma``.
    """
    v = GraphVector.from_graph(gamma)
    if len(args) == gamma.n:
        lhs = phi_vector(differential_delta(v), args).times_hbar()
    elif len(args) == gamma.n + 1:
        lhs = phi_vector(differential_d(v), args)
    else:
        raise ArityError(f"expected {gamma.n} or {gamma.n + 1} arguments, got {len(args)}")
    return lhs, ce_differential(gamma, args)


def ce_differential_reference(gamma: Graph, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """Same as :func:`ce_differential` by brute-force symmetrization; for testing."""
    if not args:
        raise ArityError("at least one argument is required")
    return symmetrized(lambda a: _ce_partial(gamma, a), args)


def _ce_partial(gamma: Graph, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    n = gamma.n
    space, trunc = _common(args)
    ps = [_par(a) for a in args]
    pg = gamma.l % 2
    sg = -1 if pg else 1
    out = SuperPolynomial.zero(space, trunc)
    if len(args) == n:
        out = out + q_unary(phi_sym(gamma, args))
        for i in range(n):
            sign = -1 if sum(ps[:i]) % 2 else 1
            inner = list(args)
            inner[i] = q_unary(args[i])
            out = out - phi_sym(gamma, inner) * (sg * sign)
    elif len(args) == n + 1:
        out = out + q_binary(phi_sym(gamma, args[:n]), args[n])
        s2 = -1 if (pg * ps[0]) % 2 else 1
        out = out + q_binary(args[0], phi_sym(gamma, args[1:])) * s2
        for i in range(n):
            sign = -1 if sum(ps[:i]) % 2 else 1
            inner = list(args[:i]) + [q_binary(args[i], args[i + 1])] + list(args[i + 2 :])
            out = out - phi_sym(gamma, inner) * (sg * sign)
    return out


# --- vector field and flow --------------------------------------------------


def xi(gammah: HbarGraphVector, s: SuperPolynomial) -> SuperPolynomial:
    """``sum_p hbar^p sum_G c_G Phi_G(S, ..., S) / n_G!`` for an even ``S``."""
    if s.parity() != 0:
        raise ValueError("xi needs an even-parity argument")
    out = []
    for p in gammah.powers():
        for g, c in gammah[p].items():
            out.append(phi(g, [s] * g.n).times_hbar(p) * (Fraction(c) / math.factorial(g.n)))
    return sum_polys(out, s.space, s.trunc)


def _integrate_u(f: SuperPolynomial) -> SuperPolynomial:
    return SuperPolynomial(
        f.space, {(h, u + 1, e): c / (u + 1) for (h, u, e), c in f.terms.items()}, f.trunc
    )


def flow(s: SuperPolynomial, gammah: HbarGraphVector, u_order: int, check: bool = True) -> SuperPolynomial:
    """Formal solution of ``dS/du = xi(S)``, ``S(0) = s``, below ``u^u_order``."""
    if check and qme_residual(s):
        raise NotAMasterFunction("input does not satisfy the quantum master equation at this truncation")
    if any(u for (_, u, _) in s.terms):
        raise ValueError("initial master function must not depend on u")
    t = s.trunc
    ring = Truncation(t.hbar_order, u_order, t.poly_degree)
    s0 = s.with_trunc(ring)
    cur = s0
    for _ in range(max(u_order - 1, 0)):
        cur = s0 + _integrate_u(xi(gammah, cur))
    return cur


def _lagrangian_monomials(space, coords: Sequence[int], trunc: Truncation, degree: int = 2):
    """Monomials ``hbar^h * prod`` of total degree ``degree`` in the given coordinates."""
    par, deg = space.parities, space.degrees
    cap = trunc.poly_degree if trunc.poly_degree is not None else 6
    hmax = trunc.hbar_order if trunc.hbar_order is not None else 3
    out = []
    ranges = [range(2) if par[c] else range(cap + 1) for c in coords]
    for powers in itertools.product(*ranges):
        if sum(powers) > cap:
            continue
        rest = degree - sum(p * deg[c] for p, c in zip(powers, coords))
        if rest < 0 or rest % 2 or rest // 2 >= hmax:
            continue
        exps = [0] * space.size
        for p, c in zip(powers, coords):
            exps[c] = p
        out.append((rest // 2, tuple(exps)))
    return out


def seeded_master_function(seed: int, space, trunc: Truncation, n_terms: int = 4) -> SuperPolynomial:
    """A reproducible solution of the QME: a random degree-2 function of one
    coordinate per Darboux pair (a Lagrangian choice), so both Delta S and
    {S, S} vanish identically."""
    rng = random.Random(seed)
    choices = list(itertools.product((0, 1), repeat=space.pairs))
    rng.shuffle(choices)
    for pick in choices:
        coords = [2 * a + b for a, b in enumerate(pick)]
        monos = [m for m in _lagrangian_monomials(space, coords, trunc) if any(m[1])]
        if monos:
            break
    else:
        return SuperPolynomial.zero(space, trunc)
    chosen = rng.sample(monos, min(n_terms, len(monos)))
    terms = {(h, 0, e): rng.choice([-3, -2, -1, 1, 2, 3]) for h, e in chosen}
    return SuperPolynomial(space, terms, trunc)


def linearized_qme_check(s: SuperPolynomial, t: SuperPolynomial) -> SuperPolynomial:
    """``hbar Delta T + {S, T}``; zero iff ``T`` is tangent to the QME locus at ``S``."""
    return bv_laplacian(t).times_hbar() + odd_bracket(s, t)


@dataclass(frozen=True)
class GraphOperator:
    """An hbar-graph vector viewed as a vector field on master functions."""

    graphs: HbarGraphVector

    def __call__(self, s: SuperPolynomial) -> SuperPolynomial:
        return xi(self.graphs, s)

    def arities(self) -> dict[int, set[int]]:
        return {p: {g.n for g in self.graphs[p].graphs()} for p in self.graphs.powers()}


def edge_operator(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """``Phi_edge(f, g)`` on the canonical edge graph."""
    return phi(EDGE, [f, g])


def is_class_representative(g: Graph) -> bool:
    cg, _ = canonicalize(g)
    return cg.edges == g.edges and not cg.zero
