"""Graded-commutative polynomials on Darboux coordinates.

Coordinates are ordered ``x1, psi1, x2, psi2, ...`` with ``|psi_a| = 1 - |x_a|``.
Coefficients live in ``Q[hbar, u]`` (``|hbar| = 2``, ``|u| = 0``), truncated
by the ring's :class:`Truncation`.  Derivatives act from the left.

The odd bracket is fixed by

    Delta(fg) = (Delta f) g + (-1)^|f| f (Delta g) + (-1)^|f| {f, g},

which gives the Darboux formula used in :func:`odd_bracket`.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Iterator

Key = tuple  # (hbar power, u power, exponent tuple)


class SpaceMismatch(ValueError):
    pass


@dataclass(frozen=True)
class DarbouxSpace:
    x_degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x_degrees", tuple(int(d) for d in self.x_degrees))

    @property
    def pairs(self) -> int:
        return len(self.x_degrees)

    @property
    def size(self) -> int:
        return 2 * len(self.x_degrees)

    @property
    def degrees(self) -> tuple[int, ...]:
        out = []
        for d in self.x_degrees:
            out += [d, 1 - d]
        return tuple(out)

    @cached_property
    def parities(self) -> tuple[int, ...]:
        return tuple(d % 2 for d in self.degrees)

    @cached_property
    def names(self) -> tuple[str, ...]:
        out = []
        for a in range(1, self.pairs + 1):
            out += [f"x{a}", f"psi{a}"]
        return tuple(out)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    def x(self, a: int) -> int:
        """Coordinate index of ``x^a`` (1-based pair)."""
        return 2 * (a - 1)

    def psi(self, a: int) -> int:
        return 2 * (a - 1) + 1


@dataclass(frozen=True)
class Truncation:
    """Terms with ``hbar^i, i >= hbar_order``, ``u^j, j >= u_order`` or
    polynomial degree above ``poly_degree`` are discarded (None: no cap)."""

    hbar_order: int | None = None
    u_order: int | None = None
    poly_degree: int | None = None

    def keeps(self, h: int, u: int, exps: tuple) -> bool:
        if self.hbar_order is not None and h >= self.hbar_order:
            return False
        if self.u_order is not None and u >= self.u_order:
            return False
        if self.poly_degree is not None and sum(exps) > self.poly_degree:
            return False
        return True


def _mono_sign(e1: tuple, e2: tuple, parities: tuple) -> int:
    """Koszul sign of reordering ``m1 * m2`` into coordinate order; 0 if an
    odd coordinate would square."""
    odd_after = 0  # odd coordinates of m1 with index > current
    sign = 1
    n = len(e1)
    # walk from the right, counting odd letters of m1 to the right of j
    for j in range(n - 1, -1, -1):
        if parities[j]:
            if e2[j]:
                if e1[j]:
                    return 0
                if odd_after % 2:
                    sign = -sign
            if e1[j]:
                odd_after += 1
    return sign


class SuperPolynomial:
    __slots__ = ("space", "trunc", "terms")

    def __init__(self, space: DarbouxSpace, terms=None, trunc: Truncation = Truncation()):
        self.space = space
        self.trunc = trunc
        self.terms: dict[Key, Fraction] = {}
        if terms:
            par = space.parities
            for (h, u, exps), c in terms.items():
                exps = tuple(exps)
                if len(exps) != space.size:
                    raise SpaceMismatch(f"monomial of length {len(exps)} in a space with {space.size} coordinates")
                if any(par[i] and exps[i] > 1 for i in range(len(exps))):
                    continue
                c = Fraction(c)
                if c and trunc.keeps(h, u, exps):
                    key = (h, u, exps)
                    self.terms[key] = self.terms.get(key, 0) + c
                    if not self.terms[key]:
                        del self.terms[key]

    # --- constructors -------------------------------------------------

    @classmethod
    def zero(cls, space, trunc=Truncation()):
        return cls(space, None, trunc)

    @classmethod
    def constant(cls, space, c, trunc=Truncation(), hbar: int = 0, u: int = 0):
        return cls(space, {(hbar, u, (0,) * space.size): c}, trunc)

    @classmethod
    def coordinate(cls, space, name: str | int, trunc=Truncation()):
        i = space.index(name) if isinstance(name, str) else name
        exps = [0] * space.size
        exps[i] = 1
        return cls(space, {(0, 0, tuple(exps)): 1}, trunc)

    @classmethod
    def monomial(cls, space, exps, coeff=1, hbar: int = 0, u: int = 0, trunc=Truncation()):
        return cls(space, {(hbar, u, tuple(exps)): coeff}, trunc)

    def _new(self, terms: dict) -> "SuperPolynomial":
        return SuperPolynomial(self.space, terms, self.trunc)

    def with_trunc(self, trunc: Truncation) -> "SuperPolynomial":
        return SuperPolynomial(self.space, self.terms, trunc)

    # --- inspection ---------------------------------------------------

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == SuperPolynomial.constant(self.space, other, self.trunc)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    __hash__ = None

    def term_degree(self, key: Key) -> int:
        h, _, exps = key
        return 2 * h + sum(e * d for e, d in zip(exps, self.space.degrees))

    def term_parity(self, key: Key) -> int:
        return sum(e for e, p in zip(key[2], self.space.parities) if p) % 2

    def degrees(self) -> set[int]:
        return {self.term_degree(k) for k in self.terms}

    def degree(self) -> int | None:
        """Total degree if homogeneous (None for zero or inhomogeneous)."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def parity(self) -> int | None:
        ps = {self.term_parity(k) for k in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def parity_parts(self) -> dict[int, "SuperPolynomial"]:
        parts: dict[int, dict] = {}
        for k, c in self.terms.items():
            parts.setdefault(self.term_parity(k), {})[k] = c
        return {p: self._new(t) for p, t in parts.items()}

    def poly_degree(self) -> int:
        return max((sum(k[2]) for k in self.terms), default=0)

    def max_exponents(self) -> tuple[int, ...]:
        out = [0] * self.space.size
        for _, _, exps in self.terms:
            for i, e in enumerate(exps):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def u_coefficient(self, j: int) -> "SuperPolynomial":
        return self._new({(h, 0, e): c for (h, u, e), c in self.terms.items() if u == j})

    def hbar_coefficient(self, i: int) -> "SuperPolynomial":
        return self._new({(0, u, e): c for (h, u, e), c in self.terms.items() if h == i})

    # --- arithmetic ---------------------------------------------------

    def _check(self, other: "SuperPolynomial"):
        if self.space != other.space:
            raise SpaceMismatch(f"spaces {self.space.x_degrees} and {other.space.x_degrees} differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperPolynomial.constant(self.space, other, self.trunc)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return self._new({k: c * other for k, c in self.terms.items()}) if other else self._new({})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def times_hbar(self, power: int = 1) -> "SuperPolynomial":
        return self._new({(h + power, u, e): c for (h, u, e), c in self.terms.items()})

    def times_u(self, power: int = 1) -> "SuperPolynomial":
        return self._new({(h, u + power, e): c for (h, u, e), c in self.terms.items()})

    def __repr__(self):
        return f"SuperPolynomial({format_terms(self)})"


def multiply(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Graded-commutative product with Koszul signs, truncated."""
    f._check(g)
    par = f.space.parities
    trunc = f.trunc
    out: dict[Key, Fraction] = {}
    for (h1, u1, e1), c1 in f.terms.items():
        for (h2, u2, e2), c2 in g.terms.items():
            s = _mono_sign(e1, e2, par)
            if not s:
                continue
            h, u = h1 + h2, u1 + u2
            exps = tuple(a + b for a, b in zip(e1, e2))
            if not trunc.keeps(h, u, exps):
                continue
            key = (h, u, exps)
            out[key] = out.get(key, 0) + s * c1 * c2
    return SuperPolynomial(f.space, {k: v for k, v in out.items() if v}, trunc)


def partial(f: SuperPolynomial, coord: int | str) -> SuperPolynomial:
    """Left derivative: the coordinate is moved to the front before removal."""
    i = f.space.index(coord) if isinstance(coord, str) else coord
    if not 0 <= i < f.space.size:
        raise KeyError(f"unknown coordinate index {coord!r}")
    par = f.space.parities
    out: dict[Key, Fraction] = {}
    for (h, u, exps), c in f.terms.items():
        e = exps[i]
        if not e:
            continue
        sign = 1
        if par[i] and sum(exps[k] for k in range(i) if par[k]) % 2:
            sign = -1
        new = list(exps)
        new[i] -= 1
        key = (h, u, tuple(new))
        out[key] = out.get(key, 0) + sign * e * c
    return SuperPolynomial(f.space, {k: v for k, v in out.items() if v}, f.trunc)


def bv_laplacian(f: SuperPolynomial) -> SuperPolynomial:
    """``sum_a d/dx^a d/dpsi_a f`` (psi-derivative first)."""
    out = SuperPolynomial.zero(f.space, f.trunc)
    for a in range(1, f.space.pairs + 1):
        out = out + partial(partial(f, f.space.psi(a)), f.space.x(a))
    return out


def odd_bracket(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """``{f, g} = sum_a (-1)^{|f||x^a|} d_x f d_psi g + (-1)^{|f||psi_a|} d_psi f d_x g``."""
    f._check(g)
    sp = f.space
    out = SuperPolynomial.zero(sp, f.trunc)
    for pf, fp in f.parity_parts().items():
        for a in range(1, sp.pairs + 1):
            ix, ip = sp.x(a), sp.psi(a)
            t1 = multiply(partial(fp, ix), partial(g, ip))
            t2 = multiply(partial(fp, ip), partial(g, ix))
            if pf * sp.parities[ix] % 2:
                t1 = -t1
            if pf * sp.parities[ip] % 2:
                t2 = -t2
            out = out + t1 + t2
    return out


def qme_residual(s: SuperPolynomial) -> SuperPolynomial:
    """``hbar Delta S + 1/2 {S, S}``."""
    if s and s.degree() != 2:
        warnings.warn("master function is not homogeneous of total degree 2", stacklevel=2)
    return bv_laplacian(s).times_hbar() + Fraction(1, 2) * odd_bracket(s, s)


# --- text format -----------------------------------------------------------

_TERM_FACTOR = re.compile(r"^(hbar|u|x\d+|psi\d+)(?:\^(\d+))?$")


def format_terms(f: SuperPolynomial) -> str:
    if not f.terms:
        return "0"
    names = f.space.names
    parts = []
    for (h, u, exps), c in f.items():
        factors = [str(c)]
        if h:
            factors.append(f"hbar^{h}")
        if u:
            factors.append(f"u^{u}")
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        parts.append(" * ".join(factors))
    return " + ".join(parts)


def format_polynomial(f: SuperPolynomial) -> str:
    t = f.trunc
    caps = " ".join(
        f"{k}={'none' if v is None else v}"
        for k, v in (("hbar", t.hbar_order), ("u", t.u_order), ("degree", t.poly_degree))
    )
    space = " ".join(str(d) for d in f.space.x_degrees)
    return f"space: {space}\ntruncation: {caps}\n{format_terms(f)}\n"


def parse_terms(text: str, space: DarbouxSpace, trunc: Truncation = Truncation()) -> SuperPolynomial:
    text = " ".join(text.split())
    out = SuperPolynomial.zero(space, trunc)
    if text in ("", "0"):
        return out
    for chunk in text.split(" + "):
        factors = [t.strip() for t in chunk.split("*")]
        coeff = Fraction(factors[0])
        h = u = 0
        mono = SuperPolynomial.constant(space, 1, Truncation())
        for fac in factors[1:]:
            m = _TERM_FACTOR.match(fac)
            if not m:
                raise ValueError(f"cannot parse factor {fac!r}")
            name, power = m.group(1), int(m.group(2) or 1)
            if name == "hbar":
                h += power
            elif name == "u":
                u += power
            else:
                for _ in range(power):
                    mono = multiply(mono, SuperPolynomial.coordinate(space, name))
        for (_, _, exps), c in mono.terms.items():
            out = out + SuperPolynomial(space, {(h, u, exps): coeff * c}, trunc)
    return out


def parse_polynomial(text: str, trunc: Truncation | None = None) -> SuperPolynomial:
    space = None
    body: list[str] = []
    file_trunc = Truncation()
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("space:"):
            space = DarbouxSpace(tuple(int(t) for t in s[6:].split()))
        elif s.startswith("truncation:"):
            vals = dict(kv.split("=") for kv in s[11:].split())

            def cap(k):
                v = vals.get(k, "none")
                return None if v == "none" else int(v)

            file_trunc = Truncation(cap("hbar"), cap("u"), cap("degree"))
        else:
            body.append(s)
    if space is None:
        raise ValueError("polynomial file lacks a 'space:' header")
    return parse_terms(" ".join(body), space, trunc if trunc is not None else file_trunc)


def random_polynomial(
    rng,
    space: DarbouxSpace,
    n_terms: int = 4,
    max_degree: int = 3,
    max_hbar: int = 0,
    coeff_range: int = 3,
    trunc: Truncation = Truncation(),
    parity: int | None = None,
) -> SuperPolynomial:
    """Random polynomial for property tests; ``parity`` restricts the terms."""
    par = space.parities
    terms: dict = {}
    tries = 0
    while len(terms) < n_terms and tries < 50 * n_terms:
        tries += 1
        exps = [0] * space.size
        for _ in range(rng.randint(0, max_degree)):
            i = rng.randrange(space.size)
            if par[i] and exps[i]:
                continue
            exps[i] += 1
        if parity is not None and sum(e for e, p in zip(exps, par) if p) % 2 != parity:
            continue
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[(rng.randint(0, max_hbar), 0, tuple(exps))] = c
    return SuperPolynomial(space, terms, trunc)


def sum_polys(polys: Iterable[SuperPolynomial], space: DarbouxSpace, trunc: Truncation) -> SuperPolynomial:
    out: dict[Key, Fraction] = {}
    for p in polys:
        for k, c in p.terms.items():
            out[k] = out.get(k, 0) + c
    return SuperPolynomial(space, {k: v for k, v in out.items() if v}, trunc)
