"""Exact dense linear algebra over a coefficient field.

Row reduction, rank, right kernels, and dimensions of sums of subspaces.
Everything here works on matrices of at most a few dozen rows/columns, so
plain Gauss-Jordan elimination with exact field arithmetic is the right
tool; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import Field

Vector = tuple


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable rectangular matrix with entries in a fixed field."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence]) -> "DenseMatrix":
        data = tuple(tuple(field.convert(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        return DenseMatrix(field, nrows, ncols, data)

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "DenseMatrix":
        z = field.zero
        return DenseMatrix(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @staticmethod
    def identity(field: Field, n: int) -> "DenseMatrix":
        z, o = field.zero, field.one
        return DenseMatrix(
            field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        )

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(
            self.field,
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def matmul(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        f = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = f.zero
                for k in range(self.cols):
                    acc = f.add(acc, f.mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return DenseMatrix(f, self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence) -> Vector:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        f = self.field
        out = []
        for i in range(self.rows):
            acc = f.zero
            for j in range(self.cols):
                acc = f.add(acc, f.mul(self.entries[i][j], vec[j]))
            out.append(acc)
        return tuple(out)


def rref(matrix: DenseMatrix) -> tuple[DenseMatrix, int, tuple[int, ...]]:
    """Reduced row-echelon form; returns ``(R, rank, pivot_columns)``."""
    f = matrix.field
    rows = [list(row) for row in matrix.entries]
    nrows, ncols = matrix.rows, matrix.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if not f.is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not f.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    reduced = DenseMatrix(f, nrows, ncols, tuple(tuple(row) for row in rows))
    return reduced, len(pivots), tuple(pivots)


def rank(matrix: DenseMatrix) -> int:
    return rref(matrix)[1]


def kernel_basis(matrix: DenseMatrix) -> list[Vector]:
    """Basis of the right null space ``{v : M v = 0}``.

    Returns ``cols - rank`` vectors, one per free column of the reduced form.
    """
    f = matrix.field
    reduced, _, pivots = rref(matrix)
    pivot_set = set(pivots)
    free_cols = [c for c in range(matrix.cols) if c not in pivot_set]
    basis: list[Vector] = []
    for fc in free_cols:
        vec = [f.zero] * matrix.cols
        vec[fc] = f.one
        for row_idx, pc in enumerate(pivots):
            vec[pc] = f.neg(reduced.entries[row_idx][fc])
        basis.append(tuple(vec))
    return basis


def subspace_sum_dim(bases: Sequence[Sequence[Vector]], field: Field) -> int:
    """Dimension of the sum of the subspaces spanned by the given bases."""
    vectors = [v for basis in bases for v in basis]
    if not vectors:
        return 0
    length = len(vectors[0])
    if any(len(v) != length for v in vectors):
        raise ValueError("dimension mismatch among vectors")
    return rank(DenseMatrix.from_rows(field, vectors))
