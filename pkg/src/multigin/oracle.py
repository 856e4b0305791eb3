"""Independent ground truth for the closed-form constructions.

A generic initial ideal is, by definition, the initial ideal after a
general multigraded change of coordinates.  This module realizes that
definition directly: sample random block coordinate changes, run
Buchberger's algorithm to a reduced Groebner basis, take leading
monomials, and certify genericity by agreement across independent seeds.
Everything is exact; disagreement or resource exhaustion is an error,
never a silent downgrade.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional, Sequence

from .errors import OracleInstabilityError, ResourceError
from .fields import GF, Field
from .ideals import MonomialIdeal, is_radical
from .linalg import DenseMatrix, rank
from .rings import (
    Monomial,
    Polynomial,
    RingSpec,
    TermOrder,
    _reduce_terms,
    mono_lcm,
    normal_form,
)

DEFAULT_MAX_PAIRS = 50_000
DEFAULT_MAX_TERMS = 1_000_000


@dataclass(frozen=True)
class CoordinateChange:
    """Per-block invertible matrices acting as a graded ring automorphism."""

    ring: RingSpec
    field: Field
    blocks: tuple

    def __post_init__(self):
        if len(self.blocks) != self.ring.v:
            raise ValueError("need one matrix per block")
        for i, mat in enumerate(self.blocks):
            size = self.ring.block_sizes[i]
            if mat.rows != size or mat.cols != size:
                raise ValueError(f"block {i + 1} matrix must be {size}x{size}")
            if mat.field != self.field:
                raise ValueError("field mismatch in block matrix")
            if size and rank(mat) != size:
                raise ValueError(f"block {i + 1} matrix is singular")

    @staticmethod
    def identity(ring: RingSpec, field: Field) -> "CoordinateChange":
        blocks = tuple(DenseMatrix.identity(field, u) for u in ring.block_sizes)
        return CoordinateChange(ring, field, blocks)


def random_coordinate_change(
    ring: RingSpec,
    field: Field,
    seed: int,
    upper_triangular: bool = False,
) -> CoordinateChange:
    """Seeded random element of the block general-linear (or Borel) group.

    Blocks are resampled until invertible; over the default prime field a
    resample is vanishingly rare, so determinism per seed is effectively a
    one-draw contract.
    """
    rng = random.Random(seed)
    blocks = []
    for u in ring.block_sizes:
        while True:
            if upper_triangular:
                rows = []
                for r in range(u):
                    row = [field.zero] * r
                    diag = field.random(rng)
                    while field.is_zero(diag):
                        diag = field.random(rng)
                    row.append(diag)
                    row.extend(field.random(rng) for _ in range(u - r - 1))
                    rows.append(row)
            else:
                rows = [[field.random(rng) for _ in range(u)] for _ in range(u)]
            mat = DenseMatrix.from_rows(field, rows)
            if u == 0 or rank(mat) == u:
                blocks.append(mat)
                break
    return CoordinateChange(ring, field, tuple(blocks))


def apply_change(change: CoordinateChange, polys: Sequence[Polynomial]) -> list:
    """Exact substitution ``x[i,j] -> sum_k g_i[j,k] x[i,k]``; degrees are preserved."""
    ring, field = change.ring, change.field
    images = []
    for flat in range(ring.nvars):
        block, j = ring.var_id(flat)
        mat = change.blocks[block - 1]
        terms = {}
        for k in range(ring.block_sizes[block - 1]):
            c = mat.entries[j - 1][k]
            if not field.is_zero(c):
                terms[ring.variable(block, k + 1)] = c
        images.append(Polynomial(ring, field, terms))
    out = []
    for poly in polys:
        if poly.ring != ring or poly.field != field:
            raise ValueError("polynomial does not live in the change's ring")
        acc = Polynomial.zero(ring, field)
        for mono, coeff in poly.terms.items():
            piece = Polynomial.constant(ring, field, coeff)
            for flat, e in enumerate(mono):
                for _ in range(e):
                    piece = piece * images[flat]
            acc = acc + piece
        out.append(acc)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis (monic, auto-reduced); ``truncated_at`` marks a degree cap."""

    order: TermOrder
    elements: tuple
    truncated_at: Optional[int] = None

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]


def _spoly(lm_a, terms_a, lm_b, terms_b, field):
    lcm = mono_lcm(lm_a, lm_b)
    shift_a = tuple(x - y for x, y in zip(lcm, lm_a))
    shift_b = tuple(x - y for x, y in zip(lcm, lm_b))
    out: dict = {}
    for mono, c in terms_a.items():
        target = tuple(x + y for x, y in zip(mono, shift_a))
        out[target] = c
    for mono, c in terms_b.items():
        target = tuple(x + y for x, y in zip(mono, shift_b))
        acc = field.sub(out.get(target, field.zero), c)
        if field.is_zero(acc):
            out.pop(target, None)
        else:
            out[target] = acc
    return out


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Basis:
    """Mutable Buchberger state: monic elements, alive flags, pending pairs."""

    def __init__(self, order: TermOrder, field: Field):
        self.order = order
        self.field = field
        self.lms: list = []
        self.terms: list = []
        self.alive: list = []
        self.pending: dict = {}
        self.heap: list = []

    def reducers(self) -> list:
        one = self.field.one
        return [
            (self.lms[i], one, self.terms[i])
            for i in range(len(self.lms))
            if self.alive[i]
        ]

    def _pair_key(self, i: int, j: int):
        lcm = mono_lcm(self.lms[i], self.lms[j])
        return (sum(lcm),) + self.order.key(lcm)

    def add(self, lm: Monomial, terms: dict) -> None:
        """Install a new monic element, updating pairs a la Gebauer-Moeller."""
        t = len(self.lms)
        lms = self.lms
        alive_idx = [i for i in range(t) if self.alive[i]]

        candidates = list(alive_idx)
        kept: list = []
        while candidates:
            g = candidates.pop(0)
            lcm_tg = mono_lcm(lm, lms[g])
            if _coprime(lm, lms[g]):
                kept.append((g, True))
                continue
            others = [mono_lcm(lm, lms[f]) for f in candidates]
            others += [mono_lcm(lm, lms[f]) for (f, _) in kept]
            if any(_divides(o, lcm_tg) and o != lcm_tg for o in others) or any(
                o == lcm_tg for o in others[: len(candidates)]
            ):
                continue
            kept.append((g, False))

        for (i, j), lcm_ij in list(self.pending.items()):
            if not _divides(lm, lcm_ij):
                continue_pair = True
            elif mono_lcm(lms[i], lm) == lcm_ij or mono_lcm(lms[j], lm) == lcm_ij:
                continue_pair = True
            else:
                continue_pair = False
            if not continue_pair:
                del self.pending[(i, j)]

        self.lms.append(lm)
        self.terms.append(terms)
        self.alive.append(True)
        for g in alive_idx:
            if _divides(lm, lms[g]):
                self.alive[g] = False

        for g, coprime_pair in kept:
            if coprime_pair:
                continue
            pair = (g, t)
            self.pending[pair] = mono_lcm(lm, lms[g])
            heapq.heappush(self.heap, (self._pair_key(g, t), g, t))

    def pop_pair(self):
        while self.heap:
            key, i, j = heapq.heappop(self.heap)
            if (i, j) in self.pending:
                del self.pending[(i, j)]
                return key, i, j
        return None


def buchberger(
    gens: Sequence[Polynomial],
    order: TermOrder,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_terms: int = DEFAULT_MAX_TERMS,
    max_degree: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection (smallest lcm degree first) with the coprime and chain
    criteria; every remainder is fully reduced before installation.  With
    ``max_degree`` set and homogeneous input, processing stops once all
    pending pairs exceed that total degree: the result then determines the
    initial ideal exactly in degrees up to the cap, but is not a global
    basis.  Exceeding ``max_pairs`` or ``max_terms`` raises
    :class:`ResourceError` rather than returning something partial.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring, field = gens[0].ring, gens[0].field
    for g in gens:
        if g.ring != ring or g.field != field:
            raise ValueError("generators from different rings")

    basis = _Basis(order, field)
    budget = [max_terms]
    pairs_done = 0

    def install(poly_terms: dict) -> None:
        lm = max(poly_terms, key=order.key)
        inv = field.inv(poly_terms[lm])
        monic = {m: field.mul(inv, c) for m, c in poly_terms.items()}
        basis.add(lm, monic)

    queue = sorted(gens, key=lambda g: order.key(g.leading_monomial(order)))
    for g in queue:
        remainder = _reduce_terms(dict(g.terms), basis.reducers(), order, field, budget)
        if remainder:
            install(remainder)

    while True:
        popped = basis.pop_pair()
        if popped is None:
            break
        key, i, j = popped
        if max_degree is not None and key[0] > max_degree:
            truncated = GroebnerBasis(
                order, _finalize(basis, ring, field, order, reduce_tails=False), max_degree
            )
            return truncated
        pairs_done += 1
        if pairs_done > max_pairs:
            raise ResourceError(f"pair budget {max_pairs} exhausted")
        s_terms = _spoly(basis.lms[i], basis.terms[i], basis.lms[j], basis.terms[j], field)
        if not s_terms:
            continue
        remainder = _reduce_terms(s_terms, basis.reducers(), order, field, budget)
        if remainder:
            install(remainder)

    elements = _finalize(basis, ring, field, order, reduce_tails=True)
    result = GroebnerBasis(order, elements)
    for g in gens:
        if not normal_form(g, list(result.elements), order).is_zero():
            raise AssertionError("input does not reduce to zero against its own basis")
    return result


def _finalize(basis: _Basis, ring, field, order, reduce_tails: bool) -> tuple:
    """Minimalize by leading monomial, then (optionally) tail-reduce to the reduced basis."""
    records = [
        (basis.lms[i], basis.terms[i]) for i in range(len(basis.lms)) if basis.alive[i]
    ]
    records.sort(key=lambda rec: order.key(rec[0]))
    kept: list = []
    for lm, terms in records:
        if any(_divides(other_lm, lm) for other_lm, _ in kept):
            continue
        kept.append((lm, terms))
    out = []
    for idx, (lm, terms) in enumerate(kept):
        if reduce_tails:
            others = [
                (olm, field.one, oterms) for k, (olm, oterms) in enumerate(kept) if k != idx
            ]
            reduced = _reduce_terms(dict(terms), others, order, field)
        else:
            reduced = dict(terms)
        poly = Polynomial.zero(ring, field)
        poly.terms = reduced
        out.append(poly)
    out.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return tuple(out)


def initial_ideal(basis: GroebnerBasis) -> MonomialIdeal:
    """Ideal of leading monomials; minimal generators for a reduced basis."""
    if not basis.elements:
        raise ValueError("empty basis")
    ring = basis.elements[0].ring
    return MonomialIdeal.from_gens(ring, basis.leading_monomials())


def gin_oracle(
    gens: Sequence[Polynomial],
    order: TermOrder,
    seeds: Sequence[int],
    retries: int = 3,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_terms: int = DEFAULT_MAX_TERMS,
    ring: Optional[RingSpec] = None,
    field: Optional[Field] = None,
) -> MonomialIdeal:
    """Generic initial ideal by definition, certified by multi-seed agreement.

    Computes the initial ideal after an independent random coordinate
    change per seed; returns the common answer if all agree, retries with
    fresh derived seeds otherwise, and raises
    :class:`OracleInstabilityError` once the retry budget is spent.  An
    empty generator list denotes the zero ideal and needs an explicit ring.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        if ring is None:
            raise ValueError("zero ideal needs an explicit ring")
        return MonomialIdeal.zero(ring)
    ring = gens[0].ring
    field = gens[0].field
    seeds = list(seeds)
    if len(seeds) < 2:
        raise ValueError("need at least two seeds for the genericity certificate")
    for round_idx in range(retries + 1):
        round_seeds = [s + round_idx * 1_000_003 for s in seeds]
        ideals = []
        for s in round_seeds:
            change = random_coordinate_change(ring, field, s)
            moved = apply_change(change, gens)
            basis = buchberger(moved, order, max_pairs=max_pairs, max_terms=max_terms)
            ideals.append(initial_ideal(basis))
        if all(i == ideals[0] for i in ideals[1:]):
            return ideals[0]
    raise OracleInstabilityError(
        f"no agreement across {len(seeds)} seeds after {retries} retries"
    )


# ---------------------------------------------------------------------------
# variable matrices and the opt-in 3-minor regression


def matrix_coordinate_ring(nrows: int, ncols: int, blocks: int = 1) -> RingSpec:
    """Single-block (or trivially blocked) ring with matrix-coordinate labels."""
    labels = tuple(
        f"x[{i},{j}]" for i in range(1, nrows + 1) for j in range(1, ncols + 1)
    )
    if blocks != 1:
        raise ValueError("only the single-block layout is provided")
    return RingSpec((nrows * ncols,), labels=labels)


def poly_det(grid: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz determinant of a square grid of polynomials."""
    size = len(grid)
    if any(len(row) != size for row in grid):
        raise ValueError("grid must be square")
    first = grid[0][0]
    acc = Polynomial.zero(first.ring, first.field)
    for perm in permutations(range(size)):
        sign = 1
        seen = list(perm)
        for i in range(size):
            for j in range(i + 1, size):
                if seen[i] > seen[j]:
                    sign = -sign
        piece = Polynomial.constant(first.ring, first.field, 1)
        for i in range(size):
            piece = piece * grid[i][perm[i]]
        acc = acc + (piece if sign > 0 else -piece)
    return acc


def variable_matrix_minors(
    ring: RingSpec, field: Field, nrows: int, ncols: int, size: int
) -> list:
    """All ``size``-minors of the matrix whose entries are the ring's variables.

    The ring must be the single-block matrix-coordinate ring of shape
    ``nrows x ncols``.
    """
    if ring.nvars != nrows * ncols:
        raise ValueError("ring does not match the matrix shape")

    def var(i, j):
        mono = [0] * ring.nvars
        mono[(i - 1) * ncols + (j - 1)] = 1
        return Polynomial(ring, field, {tuple(mono): field.one})

    out = []
    for rows in combinations(range(1, nrows + 1), size):
        for cols in combinations(range(1, ncols + 1), size):
            grid = [[var(i, j) for j in cols] for i in rows]
            out.append(poly_det(grid))
    return out


def diagonal_variable_ranking(nrows: int, ncols: int) -> tuple:
    """Variable ranking sweeping the diagonals: offset 0, +1, -1, +2, -2, ...

    Within a diagonal the row index increases.  Returns flat indices for
    the single-block matrix-coordinate ring.
    """
    offsets = sorted(range(-(nrows - 1), ncols), key=lambda o: (abs(o), o < 0))
    ranking = []
    for off in offsets:
        for i in range(1, nrows + 1):
            j = i + off
            if 1 <= j <= ncols:
                ranking.append((i - 1) * ncols + (j - 1))
    return tuple(ranking)


def three_minor_regression(
    field: Optional[Field] = None,
    seeds: Sequence[int] = (101, 202),
    max_pairs: int = 200_000,
    max_terms: int = 30_000_000,
    max_degree: int = 5,
) -> dict:
    """Opt-in report on the 3-minor ideals of 4x4 and 4x5 variable matrices.

    Long-running.  Computes (a) the definitional gin of the 3-minors of a
    4x4 variable matrix under degrevlex, truncated at total degree
    ``max_degree``, reporting whether ``x[1,1]^2*x[2,2]*x[3,2]*x[4,2]`` is
    among the minimal generators and whether the truncated ideal is
    radical; and (b) the initial ideal of the 3-minors of a 4x5 variable
    matrix under the diagonal-sweep lex order, reporting the presence of
    ``x[1,2]*x[2,3]*x[3,1]*x[4,5]^2`` and ``x[1,2]*x[2,3]*x[3,1]*x[4,4]^2``.
    """
    field = field or GF()
    report: dict = {}

    ring16 = matrix_coordinate_ring(4, 4)
    order16 = TermOrder.make(ring16, "degrevlex")
    minors16 = variable_matrix_minors(ring16, field, 4, 4, 3)
    per_seed = []
    for s in seeds:
        change = random_coordinate_change(ring16, field, s)
        moved = apply_change(change, minors16)
        basis = buchberger(
            moved, order16, max_pairs=max_pairs, max_terms=max_terms, max_degree=max_degree
        )
        per_seed.append(initial_ideal(basis))
    agree = all(i == per_seed[0] for i in per_seed[1:])
    gin16 = per_seed[0]

    def flat16(i, j):
        return (i - 1) * 4 + (j - 1)

    target16 = [0] * 16
    target16[flat16(1, 1)] = 2
    target16[flat16(2, 2)] = 1
    target16[flat16(3, 2)] = 1
    target16[flat16(4, 2)] = 1
    report["4x4"] = {
        "seeds_agree": agree,
        "target_generator_present": tuple(target16) in gin16.gens,
        "is_radical": is_radical(gin16),
        "minimal_generators_up_to_cap": len(gin16.gens),
        "degree_cap": max_degree,
    }

    ring20 = RingSpec(
        (20,),
        labels=tuple(f"x[{i},{j}]" for i in range(1, 5) for j in range(1, 6)),
    )
    ranking = diagonal_variable_ranking(4, 5)
    order20 = TermOrder.make(ring20, "lex", ranking=ranking, enforce_block_convention=False)
    minors20 = variable_matrix_minors(ring20, field, 4, 5, 3)
    basis20 = buchberger(
        minors20, order20, max_pairs=max_pairs, max_terms=max_terms, max_degree=max_degree
    )
    in20 = initial_ideal(basis20)

    def flat20(i, j):
        return (i - 1) * 5 + (j - 1)

    named = {}
    for last_col in (4, 5):
        target = [0] * 20
        target[flat20(1, 2)] = 1
        target[flat20(2, 3)] = 1
        target[flat20(3, 1)] = 1
        target[flat20(4, last_col)] = 2
        named[f"x[1,2]*x[2,3]*x[3,1]*x[4,{last_col}]^2"] = tuple(target) in in20.gens
    report["4x5"] = {
        "named_generators_present": named,
        "minimal_generators_up_to_cap": len(in20.gens),
        "degree_cap": max_degree,
    }
    return report
