"""Exact sparse linear algebra over the rationals.

Elimination is fraction-free: rows are scaled to primitive integer vectors
and combined as ``p*r - a*s`` followed by removal of the row content.
Pivots are chosen by a Markowitz cost with ties broken by the smallest
``(row, col)`` pair, so particular solutions are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class DimensionError(ValueError):
    pass


@dataclass
class SparseRationalMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DimensionError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseRationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(i, j): Fraction(x) for i, r in enumerate(data) for j, x in enumerate(r) if x})

    @classmethod
    def identity(cls, k: int) -> "SparseRationalMatrix":
        return cls(k, k, {(i, i): Fraction(1) for i in range(k)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseRationalMatrix":
        return cls(rows, cols)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def apply(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise DimensionError(f"vector of length {len(x)} for {self.rows}x{self.cols} matrix")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if x[j]:
                out[i] += v * x[j]
        return out

    def __matmul__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return SparseRationalMatrix(self.rows, other.cols, acc)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseRationalMatrix":
        """Entry ``(i, j)`` moves to ``(row_perm[i], col_perm[j])``."""
        return SparseRationalMatrix(
            self.rows, self.cols, {(row_perm[i], col_perm[j]): v for (i, j), v in self.entries.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _integer_rows(m: SparseRationalMatrix, rhs: Sequence | None) -> list[dict[int, int]]:
    rows: list[dict[int, Fraction]] = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    if rhs is not None:
        for i, b in enumerate(rhs):
            b = Fraction(b)
            if b:
                rows[i][m.cols] = b
    out = []
    for r in rows:
        den = 1
        for v in r.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        out.append(_primitive({k: int(v * den) for k, v in r.items()}))
    return out


@dataclass
class _Echelon:
    pivots: list[tuple[int, dict[int, int]]]  # (pivot column, integer row) in selection order
    leftover: list[dict[int, int]]  # rows with no pivot among the coefficient columns


def _eliminate(rows: list[dict[int, int]], ncols: int) -> _Echelon:
    """Fraction-free elimination over columns ``0..ncols-1``."""
    active = {i: r for i, r in enumerate(rows) if r}
    pivots = []
    while True:
        colcount: dict[int, int] = {}
        for r in active.values():
            for j in r:
                if j < ncols:
                    colcount[j] = colcount.get(j, 0) + 1
        if not colcount:
            break
        best = None
        for i in sorted(active):
            r = active[i]
            rc = sum(1 for j in r if j < ncols) - 1
            for j in sorted(k for k in r if k < ncols):
                key = (rc * (colcount[j] - 1), i, j)
                if best is None or key < best:
                    best = key
        _, pi, pj = best
        prow = active.pop(pi)
        p = prow[pj]
        for i in list(active):
            r = active[i]
            a = r.get(pj)
            if a is None:
                continue
            new = {k: p * v for k, v in r.items()}
            for k, v in prow.items():
                t = new.get(k, 0) - a * v
                if t:
                    new[k] = t
                else:
                    new.pop(k, None)
            if new:
                active[i] = _primitive(new)
            else:
                del active[i]
        pivots.append((pj, prow))
    return _Echelon(pivots, [r for _, r in sorted(active.items())])


def rank(m: SparseRationalMatrix) -> int:
    return len(_eliminate(_integer_rows(m, None), m.cols).pivots)


def _back_substitute(ech: _Echelon, ncols: int, free_values: dict[int, Fraction], rhs_col: int | None):
    x = [Fraction(0)] * ncols
    for j, v in free_values.items():
        x[j] = v
    for pj, row in reversed(ech.pivots):
        acc = Fraction(row.get(rhs_col, 0)) if rhs_col is not None else Fraction(0)
        for k, v in row.items():
            if k != pj and k < ncols and x[k]:
                acc -= v * x[k]
        x[pj] = acc / row[pj]
    return x


def kernel_basis(m: SparseRationalMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column (ascending)."""
    ech = _eliminate(_integer_rows(m, None), m.cols)
    pivot_cols = {pj for pj, _ in ech.pivots}
    basis = []
    for f in range(m.cols):
        if f in pivot_cols:
            continue
        x = _back_substitute(ech, m.cols, {f: Fraction(1)}, None)
        if any(m.apply(x)):
            raise ArithmeticError("kernel vector failed exact re-substitution")
        basis.append(x)
    return basis


def solve(m: SparseRationalMatrix, rhs: Sequence) -> list[Fraction] | None:
    """A particular solution of ``m x = rhs`` (free variables zero), or None."""
    if len(rhs) != m.rows:
        raise DimensionError(f"right-hand side of length {len(rhs)} for {m.rows} rows")
    ech = _eliminate(_integer_rows(m, rhs), m.cols)
    if any(ech.leftover):
        return None
    x = _back_substitute(ech, m.cols, {}, m.cols)
    if m.apply(x) != [Fraction(b) for b in rhs]:
        raise ArithmeticError("solution failed exact re-substitution")
    return x


def column_space_rank(columns: Sequence[Sequence], length: int) -> int:
    """Rank of the matrix whose columns are ``columns``."""
    entries = {(i, j): Fraction(v) for j, col in enumerate(columns) for i, v in enumerate(col) if v}
    return rank(SparseRationalMatrix(length, len(columns), entries))


# --- text formats ----------------------------------------------------------


def format_matrix(m: SparseRationalMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for (i, j) in sorted(m.entries):
        lines.append(f"{i + 1} {j + 1} {m.entries[(i, j)]}")
    lines.append("0 0 0")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> SparseRationalMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    rows, cols = (int(t) for t in lines[0].split())
    entries = {}
    terminated = False
    for ln in lines[1:]:
        i_s, j_s, v_s = ln.split()
        if (i_s, j_s, v_s) == ("0", "0", "0"):
            terminated = True
            break
        entries[(int(i_s) - 1, int(j_s) - 1)] = Fraction(v_s)
    if not terminated:
        raise ValueError("matrix file lacks the '0 0 0' terminator")
    return SparseRationalMatrix(rows, cols, entries)


def format_vector(x: Sequence) -> str:
    return "".join(f"{k + 1} {Fraction(v)}\n" for k, v in enumerate(x) if v)


def parse_vector(text: str, length: int) -> list[Fraction]:
    x = [Fraction(0)] * length
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        k, v = ln.split()
        x[int(k) - 1] = Fraction(v)
    return x
