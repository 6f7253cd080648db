"""Invariant battery shared by ``grtbv selftest`` and the test suite.

Each check returns ``(ok, detail)``; ``detail`` must not depend on timing or
hash order so that transcripts are byte-reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .bv import flow, morphism_sides, phi, seeded_master_function, xi
from .complex import basis, cohomology_dims, differential_dhbar, matrix_of
from .config import RunConfig
from .graphs import EDGE, TADPOLE, BasisSpec, canonicalize, complete_graph, format_graph, parse_graph
from .lift import lift
from .operad import GraphVector, bracket
from .superpoly import (
    DarbouxSpace,
    SuperPolynomial,
    Truncation,
    bv_laplacian,
    multiply,
    odd_bracket,
    qme_residual,
    random_polynomial,
)


def _par(f: SuperPolynomial) -> int:
    return f.parity() or 0


def gc2_blocks(max_n: int, max_l: int):
    for n in range(1, max_n + 1):
        for l in range(0, max_l + 1):
            if basis(BasisSpec.gc2(n, l)):
                yield BasisSpec.gc2(n, l)


def _target(op: str, spec: BasisSpec) -> BasisSpec:
    return BasisSpec.gc2(spec.n + 1, spec.l + 1) if op == "d" else BasisSpec.gc2(spec.n, spec.l + 1)


def _product(second: str, first: str, spec: BasisSpec):
    """Matrix of ``second . first`` on the block ``spec`` (None when trivially zero)."""
    mid = _target(first, spec)
    if not basis(mid) or not basis(_target(second, mid)):
        return None
    return matrix_of(second, mid) @ matrix_of(first, spec)


def check_differentials(max_n: int, max_l: int) -> tuple[bool, str]:
    """``d^2 = 0``, ``Delta^2 = 0`` and ``d Delta + Delta d = 0`` as matrices."""
    blocks = list(gc2_blocks(max_n, max_l))
    for spec in blocks:
        for name, terms in (("d^2", [("d", "d")]), ("Delta^2", [("delta", "delta")]),
                            ("d Delta + Delta d", [("d", "delta"), ("delta", "d")])):
            total: dict = {}
            for second, first in terms:
                m = _product(second, first, spec)
                for k, v in (m.entries.items() if m is not None else ()):
                    total[k] = total.get(k, 0) + v
            if any(total.values()):
                return False, f"{name} != 0 on block ({spec.n},{spec.l})"
    return True, f"{len(blocks)} blocks"


def check_generators() -> tuple[bool, str]:
    e, t = GraphVector.from_graph(EDGE), GraphVector.from_graph(TADPOLE)
    ok = not bracket(e, e) and not bracket(t, t) and not bracket(t, e)
    return ok, "[e,e] = [t,t] = [t,e] = 0" if ok else "nonzero bracket"


def jacobi_defect(x: GraphVector, y: GraphVector, z: GraphVector) -> GraphVector:
    """``[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]`` for homogeneous inputs."""
    s = -1 if (x.degree() * y.degree()) % 2 else 1
    return bracket(x, bracket(y, z)) - bracket(bracket(x, y), z) - s * bracket(y, bracket(x, z))


def check_jacobi(rng: random.Random, count: int, max_n: int = 4, max_l: int = 5) -> tuple[bool, str]:
    pool = [g for n in range(1, max_n + 1) for l in range(0, max_l + 1)
            for g in basis(BasisSpec(n, l))]
    for _ in range(count):
        x, y, z = (GraphVector.from_graph(rng.choice(pool)) for _ in range(3))
        if jacobi_defect(x, y, z):
            return False, "Jacobi defect nonzero"
    return True, f"{count} triples"


def check_bv_algebra(rng: random.Random, count: int) -> tuple[bool, str]:
    """Delta^2 = 0, the generator identity, antisymmetry and Jacobi for the bracket."""
    spaces = [DarbouxSpace((0, 1)), DarbouxSpace((1, 0, 2)), DarbouxSpace((1, 1))]
    for k in range(count):
        sp = spaces[k % len(spaces)]
        f, g, h = (random_polynomial(rng, sp, 3, 4, parity=rng.randint(0, 1)) for _ in range(3))
        pf, pg = _par(f), _par(g)
        if bv_laplacian(bv_laplacian(f)):
            return False, "Delta^2 != 0"
        sf = -1 if pf else 1
        lhs = bv_laplacian(multiply(f, g))
        rhs = multiply(bv_laplacian(f), g) + sf * multiply(f, bv_laplacian(g)) + sf * odd_bracket(f, g)
        if lhs != rhs:
            return False, "generator identity fails"
        s = -1 if ((pf + 1) * (pg + 1)) % 2 else 1
        if odd_bracket(f, g) != -s * odd_bracket(g, f):
            return False, "shifted antisymmetry fails"
        if odd_bracket(f, odd_bracket(g, h)) != odd_bracket(odd_bracket(f, g), h) + s * odd_bracket(g, odd_bracket(f, h)):
            return False, "shifted Jacobi fails"
    return True, f"{count} inputs"


def check_cohomology() -> tuple[bool, str]:
    dims = [cohomology_dims(deg, 3)[2] for deg in (0, -1, -2)]
    return dims == [1, 0, 0], f"dim H^0,H^-1,H^-2 at loop order 3 = {dims}"


def tetrahedron() -> GraphVector:
    return GraphVector.from_graph(canonicalize(complete_graph(4))[0])


def check_lift(order: int) -> tuple[bool, str]:
    lk = lift(tetrahedron(), order)
    return not differential_dhbar(lk), f"K4 lift powers {lk.powers()}"


def check_edge_bracket(rng: random.Random, count: int) -> tuple[bool, str]:
    sp = DarbouxSpace((0, 1))
    for _ in range(count):
        f, g = (random_polynomial(rng, sp, 3, 4, parity=rng.randint(0, 1)) for _ in range(2))
        sign = -1 if _par(f) else 1
        if phi(EDGE, [f, g]) != sign * odd_bracket(f, g):
            return False, "phi(edge) differs from the bracket"
    return True, f"{count} pairs"


MORPHISM_GRAPHS = ("2 1 : 1-2", "4 5 : 1-3 1-4 2-3 2-4 3-4", "4 6 : 1-2 1-3 1-4 2-3 2-4 3-4")


def check_morphism(rng: random.Random, cfg: RunConfig, tuples: int) -> tuple[bool, str]:
    """The morphism identity at both arities on seeded tuples of degree <= 3."""
    trunc = Truncation(cfg.hbar_order, None, cfg.poly_degree)
    sp = cfg.darboux
    for text in MORPHISM_GRAPHS:
        g = canonicalize(parse_graph(text))[0]
        for k in range(tuples):
            m = g.n + k % 2
            args = [random_polynomial(rng, sp, 2, 3, parity=rng.randint(0, 1), trunc=trunc) for _ in range(m)]
            lhs, rhs = morphism_sides(g, args)
            if lhs != rhs:
                return False, f"morphism identity fails on {format_graph(g)}"
    return True, f"{len(MORPHISM_GRAPHS)} graphs x {tuples} tuples"


def check_flow(cfg: RunConfig, order: int = 2) -> tuple[bool, str]:
    s = seeded_master_function(cfg.seed, cfg.darboux, cfg.truncation)
    if qme_residual(s):
        return False, "seed is not a master function"
    gk = lift(tetrahedron(), order)
    su = flow(s, gk, cfg.u_order)
    ok = not qme_residual(su) and su.u_coefficient(1) == xi(gk, s).with_trunc(su.trunc)
    return ok, f"S(u) has {len(su)} terms"


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], tuple[bool, str]]


def battery(cfg: RunConfig) -> list[Check]:
    rng = random.Random(cfg.seed)
    return [
        Check("differentials", lambda: check_differentials(6, 10)),
        Check("generators", check_generators),
        Check("jacobi", lambda: check_jacobi(rng, 10)),
        Check("bv-algebra", lambda: check_bv_algebra(rng, 20)),
        Check("cohomology", check_cohomology),
        Check("lift", lambda: check_lift(cfg.hbar_order)),
        Check("edge-bracket", lambda: check_edge_bracket(rng, 10)),
        Check("morphism", lambda: check_morphism(rng, cfg, 2)),
        Check("flow", lambda: check_flow(cfg, cfg.hbar_order)),
    ]


def run_battery(cfg: RunConfig) -> tuple[bool, list[str]]:
    lines = [f"selftest seed={cfg.seed}"]
    all_ok = True
    for c in battery(cfg):
        ok, detail = c.run()
        all_ok &= ok
        lines.append(f"{'ok  ' if ok else 'FAIL'} {c.name}: {detail}")
    lines.append("result: " + ("pass" if all_ok else "fail"))
    return all_ok, lines
