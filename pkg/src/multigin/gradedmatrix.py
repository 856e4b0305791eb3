"""Row- and column-graded matrices of linear forms.

A matrix ``L`` is stored through its coefficient tensor: ``coeffs[i][j]``
is the dense coefficient vector of the entry in row ``i+1``, column
``j+1`` over the variables of its block.  Row grading puts entry ``(i,j)``
in the block of row ``i`` (block size ``n``); column grading puts it in
the block of column ``j`` (block size ``m``).

From the tensor we compute the linear-algebra invariants driving the
closed-form constructions: the column-span dimensions ``b(A)`` of row
submatrices, the per-row relation spaces ``V_i`` with their sums, the map
``A -> n - dim V_A``, and exact symbolic minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import PreconditionError, SchemaError
from .fields import Field, field_from_json
from .linalg import DenseMatrix, kernel_basis, rank, subspace_sum_dim
from .rings import Monomial, Polynomial, RingSpec

MAX_MINOR_SIZE = 6

ROW = "row"
COLUMN = "column"


def _mask_iter(m: int):
    return range(1 << m)


def _mask_of(subset: Iterable[int], m: int) -> int:
    mask = 0
    for i in subset:
        if not 1 <= i <= m:
            raise IndexError(f"index {i} out of range 1..{m}")
        mask |= 1 << (i - 1)
    return mask


@dataclass(frozen=True)
class PhiMap:
    """Monotone nonincreasing map from subsets of ``[m]`` to ``{0..n}``.

    ``values[mask]`` stores the value on the subset encoded by ``mask``
    (bit ``i-1`` set means ``i`` is in the subset).  The empty set maps to
    ``n`` and values can only shrink as the subset grows.
    """

    m: int
    n: int
    values: tuple

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if self.m < 1 or self.n < 1:
            raise ValueError("need at least one block and one column")
        if len(values) != 1 << self.m:
            raise ValueError("need one value per subset")
        if values[0] != self.n:
            raise ValueError("the empty set must map to n")
        for mask in _mask_iter(self.m):
            if not 0 <= values[mask] <= self.n:
                raise ValueError("values must lie in 0..n")
            for i in range(self.m):
                if mask & (1 << i) and values[mask] > values[mask & ~(1 << i)]:
                    raise ValueError("map must be nonincreasing under inclusion")
        object.__setattr__(self, "values", values)

    def value(self, mask: int) -> int:
        return self.values[mask]

    def of(self, subset: Iterable[int]) -> int:
        """Value on a subset given by 1-based indices."""
        return self.values[_mask_of(subset, self.m)]

    @property
    def d(self) -> tuple:
        """Single-block values ``d_i``, the caps of the associated Borel ideal."""
        return tuple(self.values[1 << i] for i in range(self.m))


@dataclass(frozen=True)
class GradedLinearMatrix:
    """Coefficient tensor of a graded m x n matrix of linear forms."""

    field: Field
    grading: str
    m: int
    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.grading not in (ROW, COLUMN):
            raise SchemaError(f"grading must be 'row' or 'column', got {self.grading!r}")
        if self.m < 1 or self.n < 1:
            raise SchemaError("matrix must have at least one row and one column")
        width = self.entry_block_size
        coeffs = []
        for i, row in enumerate(self.coeffs):
            if len(row) != self.n:
                raise SchemaError(f"row {i + 1} has {len(row)} entries, expected {self.n}")
            fixed_row = []
            for j, vec in enumerate(row):
                if len(vec) != width:
                    raise SchemaError(
                        f"entry ({i + 1},{j + 1}) has {len(vec)} coefficients, expected {width}"
                    )
                fixed_row.append(tuple(self.field.convert(c) for c in vec))
            coeffs.append(tuple(fixed_row))
        if len(coeffs) != self.m:
            raise SchemaError(f"got {len(coeffs)} rows, expected {self.m}")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def entry_block_size(self) -> int:
        return self.n if self.grading == ROW else self.m

    @property
    def ring(self) -> RingSpec:
        """Ambient ring; variables are named ``x[i,j]`` in matrix coordinates."""
        if self.grading == ROW:
            return RingSpec((self.n,) * self.m)
        labels = tuple(
            f"x[{i},{j}]" for j in range(1, self.n + 1) for i in range(1, self.m + 1)
        )
        return RingSpec((self.m,) * self.n, labels=labels)

    def variable(self, i: int, j: int) -> Monomial:
        """Monomial for the matrix-coordinate variable ``x[i,j]``."""
        if self.grading == ROW:
            return self.ring.variable(i, j)
        return self.ring.variable(j, i)

    @staticmethod
    def from_entries(field: Field, grading: str, m: int, n: int, entries) -> "GradedLinearMatrix":
        return GradedLinearMatrix(field, grading, m, n, tuple(tuple(e) for e in entries))


def entry_poly(L: GradedLinearMatrix, i: int, j: int) -> Polynomial:
    """The linear form in position ``(i, j)`` (1-based)."""
    if not (1 <= i <= L.m and 1 <= j <= L.n):
        raise IndexError(f"entry ({i},{j}) out of range for a {L.m}x{L.n} matrix")
    ring = L.ring
    terms = {}
    vec = L.coeffs[i - 1][j - 1]
    for k, c in enumerate(vec, start=1):
        if L.field.is_zero(c):
            continue
        block, index = (i, k) if L.grading == ROW else (j, k)
        terms[ring.variable(block, index)] = c
    return Polynomial(ring, L.field, terms)


def _row_coefficient_matrix(L: GradedLinearMatrix, i: int) -> DenseMatrix:
    """Matrix of the map sending column weights to the row-``i`` combination.

    Shape is block size by column count: column ``j`` is the coefficient
    vector of the entry ``(i, j)``.
    """
    width = L.entry_block_size
    rows = [[L.coeffs[i - 1][j][k] for j in range(L.n)] for k in range(width)]
    return DenseMatrix.from_rows(L.field, rows)


def column_span_dim(L: GradedLinearMatrix, subset: Iterable[int]) -> int:
    """Dimension of the span of the columns of the row-submatrix on ``subset``."""
    if L.grading != ROW:
        raise PreconditionError("column-span dimensions are defined for row-graded matrices")
    rows = sorted(set(subset))
    if not rows:
        return 0
    stacked = []
    for i in rows:
        if not 1 <= i <= L.m:
            raise IndexError(f"row {i} out of range 1..{L.m}")
        stacked.extend(_row_coefficient_matrix(L, i).entries)
    return rank(DenseMatrix.from_rows(L.field, stacked))


def row_kernel(L: GradedLinearMatrix, i: int) -> list:
    """Basis of ``V_i``: column weights annihilating row ``i``."""
    if L.grading != ROW:
        raise PreconditionError("row kernels are defined for row-graded matrices")
    if not 1 <= i <= L.m:
        raise IndexError(f"row {i} out of range 1..{L.m}")
    return kernel_basis(_row_coefficient_matrix(L, i))


def phi_from_kernels(L: GradedLinearMatrix) -> PhiMap:
    """The map ``A -> n - dim(sum of V_i over i in A)``."""
    if L.grading != ROW:
        raise PreconditionError("kernel map is defined for row-graded matrices")
    kernels = [row_kernel(L, i) for i in range(1, L.m + 1)]
    values = []
    for mask in _mask_iter(L.m):
        chosen = [kernels[i] for i in range(L.m) if mask & (1 << i)]
        values.append(L.n - subspace_sum_dim(chosen, L.field))
    return PhiMap(L.m, L.n, tuple(values))


def maximal_minor(L: GradedLinearMatrix, cols: Sequence[int]) -> Polynomial:
    """Exact symbolic determinant of the square submatrix on the given columns.

    Cofactor expansion along the first row with memoization on column
    subsets; rejected above ``MAX_MINOR_SIZE`` rows.
    """
    cols = tuple(cols)
    if L.m > L.n:
        raise PreconditionError("maximal minors need m <= n")
    if L.m > MAX_MINOR_SIZE:
        raise PreconditionError(f"minor expansion limited to {MAX_MINOR_SIZE} rows")
    if len(cols) != L.m or any(
        cols[t] >= cols[t + 1] for t in range(len(cols) - 1)
    ):
        raise PreconditionError(f"need a strictly increasing list of {L.m} columns")
    if cols and not (1 <= cols[0] and cols[-1] <= L.n):
        raise PreconditionError("column index out of range")
    entries = {
        (i, j): entry_poly(L, i, j) for i in range(1, L.m + 1) for j in cols
    }
    return _determinant(L, entries, 1, cols)


def _determinant(L, entries, row, cols, _memo=None):
    if _memo is None:
        _memo = {}
    key = (row, cols)
    if key in _memo:
        return _memo[key]
    if not cols:
        return Polynomial.constant(L.ring, L.field, 1)
    result = Polynomial.zero(L.ring, L.field)
    for t, j in enumerate(cols):
        rest = cols[:t] + cols[t + 1 :]
        sub = _determinant(L, entries, row + 1, rest, _memo)
        piece = entries[(row, j)] * sub
        result = result + (piece if t % 2 == 0 else -piece)
    _memo[key] = result
    return result


def two_minor(L: GradedLinearMatrix, i: int, k: int, j: int, l: int) -> Polynomial:
    """The 2x2 determinant on rows ``i < k`` and columns ``j < l``."""
    return entry_poly(L, i, j) * entry_poly(L, k, l) - entry_poly(L, i, l) * entry_poly(L, k, j)


def all_two_minors(L: GradedLinearMatrix) -> list:
    """All nonzero 2x2 minors of ``L``."""
    if L.m < 2 or L.n < 2:
        raise PreconditionError("2-minors need at least two rows and two columns")
    out = []
    for i, k in combinations(range(1, L.m + 1), 2):
        for j, l in combinations(range(1, L.n + 1), 2):
            minor = two_minor(L, i, k, j, l)
            if not minor.is_zero():
                out.append(minor)
    return out


def maximal_minor_polys(L: GradedLinearMatrix) -> list:
    """All maximal minors of ``L`` (zero ones omitted)."""
    if L.m > L.n:
        raise PreconditionError("maximal minors need m <= n")
    out = []
    for cols in combinations(range(1, L.n + 1), L.m):
        minor = maximal_minor(L, cols)
        if not minor.is_zero():
            out.append(minor)
    return out


def nonzero_minor_supports(L: GradedLinearMatrix) -> set:
    """Column sets whose maximal minor is not identically zero (column grading)."""
    if L.grading != COLUMN:
        raise PreconditionError("minor supports are defined for column-graded matrices")
    if L.m > L.n:
        raise PreconditionError("maximal minors need m <= n")
    supports = set()
    for cols in combinations(range(1, L.n + 1), L.m):
        if not maximal_minor(L, cols).is_zero():
            supports.add(frozenset(cols))
    return supports


# ---------------------------------------------------------------------------
# instance JSON schema


def instance_to_json(L: GradedLinearMatrix, **extras) -> dict:
    """Serialize a matrix (plus optional ``seed``/``order``/``cap``) bit-exactly."""
    doc = {
        "field": L.field.to_json(),
        "grading": L.grading,
        "m": L.m,
        "n": L.n,
        "entries": [
            [[L.field.scalar_to_json(c) for c in vec] for vec in row] for row in L.coeffs
        ],
    }
    for key, value in extras.items():
        if value is not None:
            doc[key] = value
    return doc


def instance_from_json(doc) -> tuple:
    """Parse the instance schema; returns ``(matrix, extras)``.

    Raises :class:`SchemaError` on any malformed content, including
    coefficient vectors of the wrong length.
    """
    if not isinstance(doc, dict):
        raise SchemaError("instance must be a JSON object")
    for key in ("field", "grading", "m", "n", "entries"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}")
    try:
        fld = field_from_json(doc["field"])
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    grading = doc["grading"]
    m, n = doc["m"], doc["n"]
    if isinstance(m, bool) or isinstance(n, bool) or not isinstance(m, int) or not isinstance(n, int):
        raise SchemaError("m and n must be integers")
    entries = doc["entries"]
    if not isinstance(entries, list):
        raise SchemaError("entries must be a list of rows")
    parsed_rows = []
    for row in entries:
        if not isinstance(row, list):
            raise SchemaError("each row must be a list of coefficient vectors")
        parsed_row = []
        for vec in row:
            if not isinstance(vec, list):
                raise SchemaError("each entry must be a coefficient vector")
            try:
                parsed_row.append([fld.scalar_from_json(c) for c in vec])
            except (TypeError, ValueError) as exc:
                raise SchemaError(str(exc)) from exc
        parsed_rows.append(parsed_row)
    try:
        matrix = GradedLinearMatrix.from_entries(fld, grading, m, n, parsed_rows)
    except SchemaError:
        raise
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from exc
    extras = {}
    for key in ("seed", "order", "cap"):
        if key in doc:
            extras[key] = doc[key]
    if "order" in extras and extras["order"] not in ("lex", "degrevlex"):
        raise SchemaError(f"order must be 'lex' or 'degrevlex', got {extras['order']!r}")
    if "seed" in extras and (isinstance(extras["seed"], bool) or not isinstance(extras["seed"], int)):
        raise SchemaError("seed must be an integer")
    if "cap" in extras and (
        isinstance(extras["cap"], bool) or not isinstance(extras["cap"], int) or extras["cap"] < 0
    ):
        raise SchemaError("cap must be a nonnegative integer")
    return matrix, extras
