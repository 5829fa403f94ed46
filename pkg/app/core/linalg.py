"""
Dense matrices over a prime field
"""

import numpy as np

from core.exceptions import (
    DimensionMismatch,
    NotInSpan,
    NotSquare,
    Singular,
)
from core.field import FieldContext

_INT64_MAX = (1 << 63) - 1


def _mod_matmul(a, b, q):
    if a.dtype == object or b.dtype == object:
        return np.dot(a.astype(object), b.astype(object)) % q
    # each partial sum of products must fit in int64
    chunk = max(1, _INT64_MAX // max(1, (q - 1) ** 2))
    inner = a.shape[1]
    if inner <= chunk:
        return (a @ b) % q
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, inner, chunk):
        stop = start + chunk
        out = (out + (a[:, start:stop] @ b[start:stop, :]) % q) % q
    return out


class Matrix:
    """A rows x cols matrix over F_q, entries kept reduced."""

    __slots__ = ("field", "data")

    def __init__(self, field, data):
        if not isinstance(field, FieldContext):
            raise TypeError("field must be a FieldContext")
        arr = np.asarray(data)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise DimensionMismatch("matrix data must be two dimensional")
        if arr.dtype != field.dtype or arr.size and (
            arr.min() < 0 or arr.max() >= field.q
        ):
            arr = field.array(arr).reshape(arr.shape)
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field, size):
        return cls(field, np.eye(size, dtype=field.dtype))

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, field.array(rows))

    @classmethod
    def column(cls, field, values):
        return cls(field, field.array(values).reshape(-1, 1))

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def is_square(self):
        return self.rows == self.cols

    def tolist(self):
        return [[int(v) for v in row] for row in self.data]

    def copy(self):
        return Matrix(self.field, self.data.copy())

    def _check_field(self, other):
        if other.field != self.field:
            raise DimensionMismatch("matrices live in different fields")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    __hash__ = None

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over F_{self.field.q})"

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, (self.data + other.data) % self.field.q)

    def __sub__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, (self.data - other.data) % self.field.q)

    def __matmul__(self, other):
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        return Matrix(
            self.field, _mod_matmul(self.data, other.data, self.field.q)
        )

    def scale(self, factor):
        factor = int(factor) % self.field.q
        return Matrix(self.field, (self.data * factor) % self.field.q)

    def transpose(self):
        return Matrix(self.field, self.data.T.copy())

    def select_rows(self, indices):
        return Matrix(self.field, self.data[np.asarray(indices, dtype=int)])

    def select_cols(self, indices):
        idx = np.asarray(indices, dtype=int)
        return Matrix(self.field, self.data[:, idx])

    def block(self, row, col, height, width):
        return Matrix(
            self.field, self.data[row:row + height, col:col + width].copy()
        )


def vstack(blocks):
    field = blocks[0].field
    for blk in blocks:
        blocks[0]._check_field(blk)
    return Matrix(field, np.vstack([blk.data for blk in blocks]))


def hstack(blocks):
    field = blocks[0].field
    for blk in blocks:
        blocks[0]._check_field(blk)
    return Matrix(field, np.hstack([blk.data for blk in blocks]))


def block_matrix(grid):
    """Assemble a matrix from a grid (list of rows) of Matrix blocks."""
    return vstack([hstack(row) for row in grid])


def _eliminate(data, q, limit_cols=None):
    """Forward elimination in place.

    Pivots are the first nonzero entry scanning top to bottom. Returns the
    pivot (row, col) list, the number of row swaps and the pivot values
    before normalisation.
    """
    rows, cols = data.shape
    limit_cols = cols if limit_cols is None else limit_cols
    pivots = []
    swaps = 0
    r = 0
    for c in range(limit_cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(data[r:, c])
        if nonzero.size == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            data[[r, p], :] = data[[p, r], :]
            swaps += 1
        pivot = int(data[r, c])
        inv = pow(pivot, -1, q)
        below = r + 1 + np.flatnonzero(data[r + 1:, c])
        if below.size:
            factors = (data[below, c] * inv) % q
            data[below, :] = (
                data[below, :] - np.outer(factors, data[r, :]) % q
            ) % q
        pivots.append((r, c, pivot))
        r += 1
    return pivots, swaps


def rank(m):
    data = m.data.copy()
    pivots, _ = _eliminate(data, m.field.q)
    return len(pivots)


def det(m):
    if not m.is_square():
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    q = m.field.q
    data = m.data.copy()
    pivots, swaps = _eliminate(data, q)
    if len(pivots) < m.rows:
        return 0
    value = -1 if swaps % 2 else 1
    for _, _, pivot in pivots:
        value = (value * pivot) % q
    return value % q


def solve(a, b):
    """Return x with a @ x == b for square nonsingular a."""
    a._check_field(b)
    if not a.is_square():
        raise NotSquare(f"cannot solve with a {a.rows}x{a.cols} matrix")
    if b.rows != a.rows:
        raise DimensionMismatch(f"rhs has {b.rows} rows, expected {a.rows}")
    q = a.field.q
    n = a.rows
    aug = np.hstack([a.data, b.data]).copy()
    pivots, _ = _eliminate(aug, q, limit_cols=n)
    if len(pivots) < n:
        raise Singular(f"matrix has rank {len(pivots)} < {n}")
    # back substitution on the echelon form
    for r in range(n - 1, -1, -1):
        inv = pow(int(aug[r, r]), -1, q)
        aug[r, :] = (aug[r, :] * inv) % q
        above = np.flatnonzero(aug[:r, r])
        if above.size:
            aug[above, :] = (
                aug[above, :] - np.outer(aug[above, r], aug[r, :]) % q
            ) % q
    return Matrix(a.field, aug[:, n:])


def inverse(a):
    return solve(a, Matrix.identity(a.field, a.rows))


def rowspace_equal(a, b):
    if a.cols != b.cols:
        raise DimensionMismatch("row spaces of different ambient dimension")
    ra = rank(a)
    return ra == rank(b) == rank(vstack([a, b]))


def change_of_basis(sub, target):
    """Return B with B @ sub == target.

    sub must have full row rank and target's rows must lie in its row space.
    """
    sub._check_field(target)
    if sub.cols != target.cols:
        raise DimensionMismatch("sub and target differ in column count")
    data = sub.data.copy()
    pivots, _ = _eliminate(data, sub.field.q)
    if len(pivots) < sub.rows:
        raise DimensionMismatch("sub does not have full row rank")
    pivot_cols = [c for _, c, _ in pivots]
    square = sub.select_cols(pivot_cols)
    # B @ square == target restricted to the same columns
    restricted = target.select_cols(pivot_cols)
    result = solve(square.transpose(), restricted.transpose()).transpose()
    if result @ sub != target:
        raise NotInSpan("target rows leave the row space of sub")
    return result


def schur_det(a, b, c, d):
    """det([[a, b], [c, d]]) computed as det(a) * det(d - c a^-1 b)."""
    complement = d - c @ solve(a, b)
    return a.field.mul(det(a), det(complement))
