"""Exact matrices over Q or over the sparse polynomial ring."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, List, Sequence

from .poly import InexactDivisionError, SparsePoly, format_rational

# Largest symbolic determinant computed without an explicit override.
SYMBOLIC_GUARD = 8
# Cofactor expansion is used at or below this size.
COFACTOR_THRESHOLD = 3


class ShapeError(ValueError):
    pass


class EntryKindError(TypeError):
    pass


class GuardError(RuntimeError):
    """A symbolic computation exceeds the desk-scale size guard."""


class RingMatrix:
    """Immutable rectangular matrix; entries are all rationals or all SparsePolys."""

    __slots__ = ("rows", "cols", "entries", "kind", "nvars")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None, nvars: int | None = None):
        data = tuple(tuple(r) for r in rows)
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ShapeError("ragged rows")
        flat = [e for r in data for e in r]
        if not flat and nvars is not None:
            # empty symbolic matrix keeps its ring
            self.kind = "poly"
            self.nvars = nvars
        elif flat and all(isinstance(e, SparsePoly) for e in flat):
            nv = {e.nvars for e in flat}
            if len(nv) != 1:
                raise ShapeError("polynomial entries from different contexts")
            self.kind = "poly"
            self.nvars = nv.pop()
        elif any(isinstance(e, SparsePoly) for e in flat):
            raise EntryKindError("mixed polynomial and scalar entries")
        else:
            data = tuple(tuple(Fraction(e) for e in r) for r in data)
            self.kind = "rational"
            self.nvars = None
        self.rows = nrows
        self.cols = ncols
        self.entries = data

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RingMatrix({self.to_json()!r})"

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RingMatrix":
        return RingMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                          ncols=self.rows, nvars=self.nvars)

    def map(self, fn) -> "RingMatrix":
        return RingMatrix([[fn(e) for e in r] for r in self.entries], ncols=self.cols)

    def row_sums(self) -> list:
        out = []
        for r in self.entries:
            total = SparsePoly.zero(self.nvars) if self.kind == "poly" else Fraction(0)
            for e in r:
                total = total + e
            out.append(total)
        return out

    def to_json(self) -> List[List[str]]:
        if self.kind == "poly":
            return [[str(e) for e in r] for r in self.entries]
        return [[format_rational(e) for e in r] for r in self.entries]

    @classmethod
    def identity(cls, n: int) -> "RingMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], ncols=n)


def submatrix(m: RingMatrix, delete_rows: Iterable[int] = (), delete_cols: Iterable[int] = ()) -> RingMatrix:
    """Drop the given rows and columns (0-based), keeping the rest in order."""
    dr, dc = set(delete_rows), set(delete_cols)
    for i in dr:
        if not 0 <= i < m.rows:
            raise IndexError(f"row {i} out of range")
    for j in dc:
        if not 0 <= j < m.cols:
            raise IndexError(f"column {j} out of range")
    keep_c = [j for j in range(m.cols) if j not in dc]
    return RingMatrix(
        [[m.entries[i][j] for j in keep_c] for i in range(m.rows) if i not in dr],
        ncols=len(keep_c),
        nvars=m.nvars,
    )


def select(m: RingMatrix, rows: Sequence[int], cols: Sequence[int]) -> RingMatrix:
    return RingMatrix([[m.entries[i][j] for j in cols] for i in rows], ncols=len(cols), nvars=m.nvars)


def _one(m: RingMatrix):
    return SparsePoly.constant(m.nvars, 1) if m.kind == "poly" else Fraction(1)


def cofactor_determinant(m: RingMatrix):
    """Laplace expansion along the first row.  Exponential; used for tiny sizes and as an oracle."""
    if not m.is_square:
        raise ShapeError(f"determinant of a {m.rows}x{m.cols} matrix")
    return _cofactor(m.entries, list(range(m.cols)), _one(m))


def _cofactor(rows, cols, one):
    if not rows:
        return one
    if len(rows) == 1:
        return rows[0][cols[0]]
    total = None
    for pos, j in enumerate(cols):
        a = rows[0][j]
        if not a:
            continue
        term = a * _cofactor(rows[1:], cols[:pos] + cols[pos + 1:], one)
        if pos % 2:
            term = -term
        total = term if total is None else total + term
    return one * 0 if total is None else total


def _int_bareiss(a: List[List[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        p = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                q, rem = divmod(p * ri[j] - f * rk[j], prev)
                if rem:
                    raise InexactDivisionError("Bareiss interior division was not exact")
                ri[j] = q
        prev = p
    return sign * a[n - 1][n - 1] if n else 1


def _poly_bareiss(a: List[List[SparsePoly]], one: SparsePoly) -> SparsePoly:
    n = len(a)
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return one * 0
        p = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                num = p * ri[j] - f * rk[j]
                ri[j] = num if prev is None else num.exact_div(prev)
        prev = p
    det = a[n - 1][n - 1] if n else one
    return -det if sign < 0 else det


def bareiss_determinant(m: RingMatrix, override_guard: bool = False):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rational matrices are scaled row-wise to integers first.  Every interior
    division is checked for exactness.  Pivot choice is the first nonzero
    entry in the column.
    """
    if not m.is_square:
        raise ShapeError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if m.kind == "poly":
        _check_guard(n, override_guard)
        if n <= COFACTOR_THRESHOLD:
            return cofactor_determinant(m)
        return _poly_bareiss([list(r) for r in m.entries], _one(m))
    scale = Fraction(1)
    rows = []
    for r in m.entries:
        den = lcm(*(e.denominator for e in r)) if r else 1
        scale *= den
        rows.append([int(e * den) for e in r])
    return Fraction(_int_bareiss(rows)) / scale


def minor_expansion_determinant(m: RingMatrix, override_guard: bool = False):
    """Division-free Laplace expansion with memoized minors.

    Row ``k`` is expanded against the determinants of rows ``0..k-1`` on every
    ``k``-subset of columns, so each product has one single-entry factor.
    Costs ``O(2^n n)`` ring multiplications.
    """
    if not m.is_square:
        raise ShapeError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if m.kind == "poly":
        _check_guard(n, override_guard)
    one = _one(m)
    minors = {(): one}
    for k in range(n):
        row = m.entries[k]
        nxt = {}
        for cols, sub in minors.items():
            if not sub:
                continue
            for j in range(n):
                a = row[j]
                if j in cols or not a:
                    continue
                pos = sum(1 for c in cols if c < j)
                term = a * sub
                if (k + pos) % 2:
                    term = -term
                key = tuple(sorted(cols + (j,)))
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        minors = nxt
    return minors.get(tuple(range(n)), one * 0)


def determinant(m: RingMatrix, override_guard: bool = False):
    """Exact determinant: integer Bareiss for rationals, minor expansion for polynomials."""
    if m.kind == "poly":
        if m.rows <= COFACTOR_THRESHOLD:
            _check_guard(m.rows, override_guard)
            return cofactor_determinant(m)
        return minor_expansion_determinant(m, override_guard=override_guard)
    return bareiss_determinant(m)


def _check_guard(n: int, override_guard: bool) -> None:
    if n > SYMBOLIC_GUARD and not override_guard:
        raise GuardError(f"symbolic determinant of size {n} exceeds guard {SYMBOLIC_GUARD}")


def rational_rank(m: RingMatrix) -> int:
    """Rank over Q by Gaussian elimination; the pivot is the first nonzero entry below."""
    if m.kind != "rational":
        raise EntryKindError("rank is defined here for rational matrices only; evaluate first")
    a = [list(r) for r in m.entries]
    rank = 0
    for c in range(m.cols):
        piv = next((i for i in range(rank, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        for i in range(rank + 1, m.rows):
            f = a[i][c]
            if f:
                f = f / pr[c]
                ri = a[i]
                for j in range(c, m.cols):
                    ri[j] -= f * pr[j]
        rank += 1
        if rank == m.rows:
            break
    return rank


__all__ = [
    "RingMatrix",
    "ShapeError",
    "EntryKindError",
    "GuardError",
    "SYMBOLIC_GUARD",
    "bareiss_determinant",
    "minor_expansion_determinant",
    "determinant",
    "cofactor_determinant",
    "submatrix",
    "select",
    "rational_rank",
]
