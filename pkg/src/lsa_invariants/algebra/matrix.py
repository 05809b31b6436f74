"""Dense matrices over the rationals or over :class:`MultiPoly`, and exact linear algebra.

Rational routines clear denominators row by row and run fraction-free
elimination on integers, so intermediate values never need gcd reduction.
Symbolic determinants and minors go through the packed kernel in
:mod:`._packed`.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Callable, Iterable, Sequence

from gmpy2 import mpz

from ..errors import DimensionMismatch, NonSquareError, SizeCapExceeded
from . import _packed
from .poly import MultiPoly, parse_poly, to_fraction

DEFAULT_SIZE_CAP = 8
WORKERS_ENV = "LSA_INVARIANTS_WORKERS"


def _coerce_entry(e):
    if isinstance(e, MultiPoly):
        return e
    return to_fraction(e)


class Matrix:
    """Immutable dense matrix whose entries are Fractions or MultiPolys."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable]):
        rows = [tuple(_coerce_entry(e) for e in row) for row in data]
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix rows")
        self._data = tuple(rows)
        self.rows = len(rows)
        self.cols = widths.pop() if widths else 0

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, rows: int, cols: int, fn: Callable) -> "Matrix":
        return cls([[fn(i, j) for j in range(cols)] for i in range(rows)])

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def is_symbolic(self) -> bool:
        return any(isinstance(e, MultiPoly) for r in self._data for e in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._data)) if self.rows else Matrix.zeros(self.cols, 0)

    def map(self, fn: Callable) -> "Matrix":
        return Matrix([[fn(e) for e in r] for r in self._data])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self._data[i][j] for j in cols] for i in rows])

    def evaluate(self, point) -> "Matrix":
        """Numeric matrix obtained by evaluating every polynomial entry at ``point``."""
        return self.map(lambda e: e.evaluate(point) if isinstance(e, MultiPoly) else e)

    def substitute(self, mapping) -> "Matrix":
        return self.map(lambda e: e.substitute(mapping) if isinstance(e, MultiPoly) else e)

    def variables(self) -> tuple:
        out = set()
        for r in self._data:
            for e in r:
                if isinstance(e, MultiPoly):
                    out.update(e.variables())
        return tuple(sorted(out))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose()._data
        out = []
        for r in self._data:
            row = []
            for c in cols:
                acc = 0
                for x, y in zip(r, c):
                    if x and y:
                        acc = x * y + acc
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in matrix addition")
        return Matrix([[x + y for x, y in zip(a, b)] for a, b in zip(self._data, other._data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in matrix subtraction")
        return Matrix([[x - y for x, y in zip(a, b)] for a, b in zip(self._data, other._data)])

    def scale(self, factor) -> "Matrix":
        return self.map(lambda e: e * factor)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            _entry_eq(x, y) for a, b in zip(self._data, other._data) for x, y in zip(a, b)
        )

    def __hash__(self):
        return hash(self._data)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        """One row per line, entries separated by `` | ``."""
        def fmt(e):
            return e.to_text() if isinstance(e, MultiPoly) else MultiPoly.constant(e).to_text()

        return "\n".join(" | ".join(fmt(e) for e in r) for r in self._data)

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        return cls([[parse_poly(cell) for cell in line.split(" | ")] for line in text.strip().splitlines()])


def _entry_eq(x, y) -> bool:
    if isinstance(x, MultiPoly) or isinstance(y, MultiPoly):
        return MultiPoly.constant(0) + x == MultiPoly.constant(0) + y
    return x == y


RatMatrix = Matrix
PolyMatrix = Matrix


# -- rational linear algebra ---------------------------------------------


def _integer_rows(m: Matrix) -> tuple[list, Fraction]:
    """Scale each row to integers; return the rows and the product of the scale factors."""
    rows = []
    scale = Fraction(1)
    for r in m:
        vals = [to_fraction(e.constant_value() if isinstance(e, MultiPoly) else e) for e in r]
        den = 1
        for v in vals:
            den = lcm(den, v.denominator)
        rows.append([mpz(v.numerator * (den // v.denominator)) for v in vals])
        scale *= den
    return rows, scale


def det_rational(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination."""
    if not m.is_square():
        raise NonSquareError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (piv * ri[j] - aik * rk[j]) // prev
        prev = piv
    return Fraction(sign * int(a[n - 1][n - 1])) / scale


def _echelon(rows: list) -> tuple[list, list]:
    """Fraction-free row echelon form in place; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    prev = mpz(1)
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            aic = rows[i][c]
            rows[i] = [(piv * x - aic * y) // prev for x, y in zip(rows[i], rows[r])]
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_rational(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    rows, _ = _integer_rows(m)
    return len(_echelon(rows)[1])


def rref(m: Matrix) -> tuple[list, list]:
    """Reduced row echelon form over Fraction; returns (nonzero rows, pivot columns)."""
    rows = [[to_fraction(e) for e in r] for r in m]
    pivots = []
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel_basis(m: Matrix) -> list:
    """Right null space basis, one vector per free column of the RREF.

    The vector for free column ``f`` has a 1 in position ``f``, zeros in the
    other free positions, and minus the RREF entries in the pivot positions.
    """
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


# -- symbolic determinants and minors ------------------------------------


def _ring_for(m: Matrix, factor: int = 1) -> _packed.PackedRing:
    deg = 0
    for r in m:
        deg += max((e.degree() if isinstance(e, MultiPoly) else 0 for e in r), default=0)
    return _packed.PackedRing(m.variables(), factor * max(deg, 1))


def _pack(ring: _packed.PackedRing, m: Matrix) -> list:
    return [[ring.encode(e if isinstance(e, MultiPoly) else MultiPoly.constant(e)) for e in r] for r in m]


def det_poly(m: Matrix, max_size: int = DEFAULT_SIZE_CAP, method: str = "auto") -> MultiPoly:
    """Exact symbolic determinant.

    ``method`` is ``"laplace"`` (memoised cofactor expansion), ``"bareiss"``
    (fraction-free elimination with exact division) or ``"auto"``, which uses
    cofactor expansion up to 4x4 and Bareiss above.
    """
    if not m.is_square():
        raise NonSquareError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n > max_size:
        raise SizeCapExceeded(f"{n}x{n} symbolic determinant exceeds cap {max_size}")
    if n == 0:
        return MultiPoly.one()
    if method == "auto":
        method = "laplace" if n <= 4 else "bareiss"
    # Bareiss numerators are products of two minors before the exact division
    ring = _ring_for(m, 2 if method == "bareiss" else 1)
    entries = _pack(ring, m)
    if method == "laplace":
        det = _packed.MinorEngine(entries).minor(tuple(range(n)), tuple(range(n)))
    elif method == "bareiss":
        det = _packed.bareiss_det(ring, entries)
    else:
        raise ValueError(f"unknown determinant method {method!r}")
    return ring.decode(det)


def minor_index(rows: int, cols: int, size: int) -> list:
    """All (row subset, column subset) pairs in lexicographic order."""
    col_sets = list(combinations(range(cols), size))
    return [(r, c) for r in combinations(range(rows), size) for c in col_sets]


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(int(raw), 1) if raw else 1
    except ValueError:
        return 1


def _minor_chunk(args):
    entries, pairs = args
    engine = _packed.MinorEngine(entries)
    return [engine.minor(r, c) for r, c in pairs]


def all_minors(
    m: Matrix,
    size: int,
    workers: int | None = None,
    max_size: int = DEFAULT_SIZE_CAP,
    index: Sequence | None = None,
) -> list:
    """All ``size`` x ``size`` minors in lexicographic (rows, columns) order.

    A single memo table is shared across the whole enumeration so common
    sub-minors are computed once.  With ``workers > 1`` the row subsets are
    split into contiguous chunks handled by separate processes; the output
    order does not depend on the worker count.
    """
    if size > min(m.rows, m.cols) or size < 0:
        raise DimensionMismatch(f"no {size}x{size} minors in a {m.rows}x{m.cols} matrix")
    if size > max_size:
        raise SizeCapExceeded(f"{size}x{size} symbolic minors exceed cap {max_size}")
    pairs = list(index) if index is not None else minor_index(m.rows, m.cols, size)
    ring = _ring_for(m)
    entries = _pack(ring, m)
    workers = default_workers() if workers is None else max(workers, 1)
    if workers == 1 or len(pairs) < 2 * workers:
        packed = _minor_chunk((entries, pairs))
    else:
        step = -(-len(pairs) // workers)
        chunks = [(entries, pairs[i:i + step]) for i in range(0, len(pairs), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            packed = [p for part in pool.map(_minor_chunk, chunks) for p in part]
    return [ring.decode(p) for p in packed]


def span_rank(polys) -> int:
    """Dimension of the linear span of ``polys``, via their coefficient vectors."""
    polys = list(polys)
    monos = sorted({m for p in polys for m in p.terms})
    if not monos:
        return 0
    return rank_rational(Matrix([[p.coefficient(m) for m in monos] for p in polys]))
