"""Reproducible random instances, including controlled degeneracies.

The degeneracy spec is a comma-separated list of directives:

``zero-row:I``      row ``I`` becomes identically zero
``zero-col:J``      column ``J`` becomes identically zero
``dup-row:I=J``     row ``I`` copies row ``J``'s coefficient vectors
``dup-col:I=J``     column ``I`` copies column ``J``
``kernel:I=D``      row ``I`` is built so its relation space has dimension
                    exactly ``D`` (row grading only)

Indices are 1-based.  Directives apply left to right on top of a generic
draw, so later ones win on conflicts.
"""

from __future__ import annotations

import random
import re
from typing import Optional, Sequence

from .errors import PreconditionError, SchemaError
from .fields import Field
from .gradedmatrix import COLUMN, ROW, GradedLinearMatrix
from .linalg import DenseMatrix, kernel_basis, rank

MAX_ROWS = 6
MAX_COLS = 8

_DIRECTIVE = re.compile(
    r"^(zero-row:(?P<zr>\d+)|zero-col:(?P<zc>\d+)"
    r"|dup-row:(?P<dri>\d+)=(?P<drj>\d+)|dup-col:(?P<dci>\d+)=(?P<dcj>\d+)"
    r"|kernel:(?P<ki>\d+)=(?P<kd>\d+))$"
)


def parse_degenerate_spec(spec: Optional[str]) -> list:
    if not spec:
        return []
    directives = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        match = _DIRECTIVE.match(chunk)
        if match is None:
            raise SchemaError(f"bad degeneracy directive {chunk!r}")
        g = match.groupdict()
        if g["zr"]:
            directives.append(("zero-row", int(g["zr"])))
        elif g["zc"]:
            directives.append(("zero-col", int(g["zc"])))
        elif g["dri"]:
            directives.append(("dup-row", int(g["dri"]), int(g["drj"])))
        elif g["dci"]:
            directives.append(("dup-col", int(g["dci"]), int(g["dcj"])))
        else:
            directives.append(("kernel", int(g["ki"]), int(g["kd"])))
    return directives


def _planted_kernel_rows(field: Field, n: int, dim: int, rng: random.Random) -> list:
    """Coefficient matrix (n rows = block size) whose right kernel has dimension ``dim``.

    Draw a random ``dim``-dimensional space, compute its annihilator, and
    take generic combinations of the annihilator basis; resample until the
    ranks certify both choices were generic.
    """
    if not 0 <= dim <= n:
        raise PreconditionError(f"kernel dimension {dim} out of range 0..{n}")
    if dim == 0:
        while True:
            rows = [[field.random(rng) for _ in range(n)] for _ in range(n)]
            if rank(DenseMatrix.from_rows(field, rows)) == n:
                return rows
    if dim == n:
        return [[field.zero] * n for _ in range(n)]
    while True:
        span = DenseMatrix.from_rows(
            field, [[field.random(rng) for _ in range(n)] for _ in range(dim)]
        )
        if rank(span) == dim:
            break
    annihilator = kernel_basis(span)  # n - dim vectors orthogonal to the span
    while True:
        mix = [[field.random(rng) for _ in range(n - dim)] for _ in range(n)]
        rows = []
        for r in range(n):
            row = [field.zero] * n
            for t, w in enumerate(annihilator):
                c = mix[r][t]
                row = [field.add(x, field.mul(c, y)) for x, y in zip(row, w)]
            rows.append(row)
        if rank(DenseMatrix.from_rows(field, rows)) == n - dim:
            return rows


def random_instance(
    field: Field,
    grading: str,
    m: int,
    n: int,
    seed: int,
    degenerate: Optional[str] = None,
) -> GradedLinearMatrix:
    """Seeded instance; same arguments always give the identical tensor."""
    if grading not in (ROW, COLUMN):
        raise SchemaError(f"grading must be 'row' or 'column', got {grading!r}")
    if not 1 <= m <= MAX_ROWS:
        raise PreconditionError(f"m must be in 1..{MAX_ROWS}")
    if not 1 <= n <= MAX_COLS:
        raise PreconditionError(f"n must be in 1..{MAX_COLS}")
    rng = random.Random(seed)
    width = n if grading == ROW else m
    coeffs = [[[field.random(rng) for _ in range(width)] for _ in range(n)] for _ in range(m)]

    for directive in parse_degenerate_spec(degenerate):
        kind = directive[0]
        if kind == "zero-row":
            i = directive[1]
            _check_row(i, m)
            for j in range(n):
                coeffs[i - 1][j] = [field.zero] * width
        elif kind == "zero-col":
            j = directive[1]
            _check_col(j, n)
            for i in range(m):
                coeffs[i][j - 1] = [field.zero] * width
        elif kind == "dup-row":
            i, j = directive[1], directive[2]
            _check_row(i, m)
            _check_row(j, m)
            for c in range(n):
                coeffs[i - 1][c] = list(coeffs[j - 1][c])
        elif kind == "dup-col":
            i, j = directive[1], directive[2]
            _check_col(i, n)
            _check_col(j, n)
            for r in range(m):
                coeffs[r][i - 1] = list(coeffs[r][j - 1])
        else:  # kernel
            i, dim = directive[1], directive[2]
            if grading != ROW:
                raise PreconditionError("kernel planting needs a row-graded instance")
            _check_row(i, m)
            planted = _planted_kernel_rows(field, n, dim, rng)
            # planted[k][j] is the coefficient of the block variable k in entry j
            for j in range(n):
                coeffs[i - 1][j] = [planted[k][j] for k in range(n)]

    return GradedLinearMatrix.from_entries(field, grading, m, n, coeffs)


def _check_row(i: int, m: int) -> None:
    if not 1 <= i <= m:
        raise PreconditionError(f"row {i} out of range 1..{m}")


def _check_col(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise PreconditionError(f"column {j} out of range 1..{n}")
