"""Exact dense linear algebra over the rationals.

Every entry is a :class:`fractions.Fraction`; nothing here ever touches a
float.  Vectors are plain tuples of Fractions.  Matrices are small (the
algebras of interest have dimension at most a couple of dozen), so plain
Gaussian elimination is used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

__all__ = [
    "QMatrix",
    "as_fraction",
    "rref",
    "rank",
    "kernel_basis",
    "det",
    "solve",
    "inverse",
    "intersect_subspaces",
    "span_contains",
    "row_space_basis",
]

Vector = tuple  # tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact linear algebra")
    return Fraction(x)


class QMatrix:
    """Immutable rational matrix stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(as_fraction(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionMismatch("ragged matrix rows")
        else:
            width = cols or 0
        self.rows = len(data)
        self.cols = width
        self._data = data

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> QMatrix:
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def transpose(self) -> QMatrix:
        return QMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    @property
    def T(self) -> QMatrix:
        return self.transpose()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __add__(self, other: QMatrix) -> QMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return QMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __sub__(self, other: QMatrix) -> QMatrix:
        return self + other.scale(-1)

    def scale(self, c) -> QMatrix:
        c = as_fraction(c)
        return QMatrix([[c * a for a in r] for r in self._data], cols=self.cols)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.column(j) for j in range(other.cols)]
            return QMatrix(
                [[_dot(r, c) for c in ocols] for r in self._data], cols=other.cols
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"cannot apply {self.shape} matrix to length-{len(v)} vector")
        return tuple(_dot(r, v) for r in self._data)

    def __pow__(self, k: int) -> QMatrix:
        if not self.is_square() or k < 0:
            raise DimensionMismatch("matrix powers need a square matrix and k >= 0")
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"QMatrix([{body}])"


def _dot(u, v) -> Fraction:
    s = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def _as_qmatrix(m) -> QMatrix:
    return m if isinstance(m, QMatrix) else QMatrix(m)


def rref(m) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and the pivot column indices."""
    m = _as_qmatrix(m)
    a = m.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return QMatrix(a, cols=m.cols), pivots


def rank(m) -> int:
    return len(rref(m)[1])


def _normalize_first_nonzero(v: list[Fraction]) -> Vector:
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


def kernel_basis(m) -> list[Vector]:
    """Basis of the right null space, each vector scaled so its first nonzero entry is 1."""
    m = _as_qmatrix(m)
    red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(_normalize_first_nonzero(v))
    return basis


def det(m) -> Fraction:
    m = _as_qmatrix(m)
    if not m.is_square():
        raise DimensionMismatch(f"determinant of non-square {m.shape} matrix")
    a = m.tolist()
    n = m.rows
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d *= piv
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def solve(m, b) -> Vector | None:
    """One exact solution x of m x = b (free variables set to 0), or None if inconsistent."""
    m = _as_qmatrix(m)
    b = tuple(as_fraction(x) for x in b)
    if len(b) != m.rows:
        raise DimensionMismatch("right-hand side length does not match matrix rows")
    aug = QMatrix([list(m.row(i)) + [b[i]] for i in range(m.rows)], cols=m.cols + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red[r, m.cols]
    return tuple(x)


def inverse(m) -> QMatrix:
    m = _as_qmatrix(m)
    if not m.is_square():
        raise DimensionMismatch("inverse of non-square matrix")
    n = m.rows
    aug = QMatrix([list(m.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)])
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return QMatrix([red.row(i)[n:] for i in range(n)], cols=n)


def row_space_basis(vectors: Sequence[Sequence]) -> list[Vector]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    if not vectors:
        return []
    red, pivots = rref(QMatrix(vectors))
    return [red.row(i) for i in range(len(pivots))]


def span_contains(basis: Sequence[Sequence], v: Sequence) -> bool:
    v = tuple(as_fraction(x) for x in v)
    if not basis:
        return all(x == 0 for x in v)
    return solve(QMatrix.from_columns(list(basis)), v) is not None


def _intersect_two(u: list[Vector], w: list[Vector], dim: int) -> list[Vector]:
    if not u or not w:
        return []
    # u.a = w.b  <=>  [U | -W] (a, b) = 0
    cols = list(u) + [tuple(-x for x in vec) for vec in w]
    ker = kernel_basis(QMatrix.from_columns(cols))
    vecs = []
    for k in ker:
        a = k[: len(u)]
        vecs.append(tuple(sum((a[i] * u[i][t] for i in range(len(u))), Fraction(0)) for t in range(dim)))
    return row_space_basis(vecs)


def intersect_subspaces(bases: Sequence[Sequence[Sequence]], dim: int | None = None) -> list[Vector]:
    """Basis of the intersection of the spans of each vector list.

    The result is in reduced echelon form (so deterministic) and is empty
    when the intersection is {0}.  ``dim`` is needed only when every input
    list is empty.
    """
    lengths = {len(v) for b in bases for v in b}
    if dim is not None:
        lengths.add(dim)
    if len(lengths) > 1:
        raise DimensionMismatch(f"vectors of differing dimensions {sorted(lengths)}")
    if not bases:
        raise ValueError("need at least one subspace")
    if not lengths:
        return []
    n = lengths.pop()
    current = row_space_basis([tuple(as_fraction(x) for x in v) for v in bases[0]])
    for b in bases[1:]:
        current = _intersect_two(current, row_space_basis([tuple(as_fraction(x) for x in v) for v in b]), n)
        if not current:
            break
    return current
