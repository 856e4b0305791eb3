"""Closed-form generic initial ideals and their prime decompositions.

Four constructions, all driven by exact linear-algebra invariants of the
input matrix rather than by any Groebner computation:

* row-graded maximal minors, from the column-span dimensions ``b(A)``;
* the same under the maximal-codimension specialization;
* column-graded maximal minors, from the set of nonvanishing minors;
* 2-minors, through the monotone map ``A -> n - dim V_A`` and the generic
  machinery of Borel ideals attached to such maps.

Every result is packaged as a :class:`GinResult` and validated on
construction: the ideal is radical and Borel fixed, and it equals the
intersection of the returned primes (with the convention that the zero
ideal carries an empty prime list).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .errors import CodimensionError, PreconditionError
from .gradedmatrix import (
    COLUMN,
    ROW,
    GradedLinearMatrix,
    PhiMap,
    column_span_dim,
    nonzero_minor_supports,
    phi_from_kernels,
)
from .ideals import (
    BorelPrime,
    MonomialIdeal,
    minimal_covers,
    intersect,
    is_borel_fixed,
    is_radical,
)
from .rings import RingSpec

THEOREM_MAXMINORS_ROW = "max-minors-row"
THEOREM_MAXMINORS_ROW_MAXCODIM = "max-minors-row-maxcodim"
THEOREM_MAXMINORS_COL = "max-minors-col"
THEOREM_TWO_MINORS = "two-minors"


@dataclass(frozen=True)
class GinResult:
    """A generic initial ideal with its irredundant prime decomposition."""

    gin: MonomialIdeal
    primes: tuple
    theorem: str

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(self.primes))
        _validate(self.gin, self.primes)

    def to_json(self) -> dict:
        return {
            "gens": self.gin.render_gens(),
            "primes": [p.render() for p in self.primes],
            "theorem": self.theorem,
        }


def _validate(gin: MonomialIdeal, primes: Sequence[BorelPrime]) -> None:
    if not is_radical(gin):
        raise AssertionError("constructed ideal is not radical")
    if not is_borel_fixed(gin, char=0):
        raise AssertionError("constructed ideal is not Borel fixed")
    if gin.is_zero():
        if primes:
            raise AssertionError("zero ideal must carry an empty prime list")
        return
    if not primes:
        raise AssertionError("nonzero ideal with empty prime list")
    for idx, p in enumerate(primes):
        for q in primes[idx + 1 :]:
            if p.contains(q) or q.contains(p):
                raise AssertionError("prime decomposition is redundant")
    if intersect([p.to_ideal() for p in primes]) != gin:
        raise AssertionError("primes do not intersect to the ideal")


def _prune_primes(primes: Sequence[BorelPrime]) -> tuple:
    """Deduplicate, then drop any prime containing another (irredundancy)."""
    unique = {p.a: p for p in primes}.values()
    ordered = sorted(unique, key=lambda p: (p.size(), p.a))
    kept: list = []
    for cand in ordered:
        if any(cand.contains(other) for other in kept):
            continue
        kept.append(cand)
    return tuple(kept)


def _normalize_zero(gin: MonomialIdeal, primes: Sequence[BorelPrime]) -> tuple:
    if gin.is_zero():
        return ()
    return tuple(primes)


# ---------------------------------------------------------------------------
# maximal minors, row-graded


def _span_dims(L: GradedLinearMatrix) -> dict:
    return {
        mask: column_span_dim(L, [i + 1 for i in range(L.m) if mask & (1 << i)])
        for mask in range(1 << L.m)
    }


def gin_maxminors_row(L: GradedLinearMatrix) -> GinResult:
    """Row-graded maximal minors: explicit gin and prime decomposition.

    Generators are the monomials with exactly one variable per row block,
    positions ``a_1..a_m``, subject to all subset constraints
    ``sum(a_i, i in A) <= b(A)``.  Primes are the block-prefix primes whose
    prefix vector is supported on some ``A`` with
    ``sum(a_i, i in A) = b(A) - |A| + 1``, pruned to the irredundant set.
    """
    if L.grading != ROW:
        raise PreconditionError("this construction needs a row-graded matrix")
    if L.m > L.n:
        raise PreconditionError("maximal minors need m <= n")
    ring = L.ring
    b = _span_dims(L)
    singles = [b[1 << i] for i in range(L.m)]
    full = (1 << L.m) - 1

    gens = []
    for a in product(*(range(1, bi + 1) for bi in singles)):
        ok = True
        for mask in range(1, full + 1):
            total = sum(a[i] for i in range(L.m) if mask & (1 << i))
            if total > b[mask]:
                ok = False
                break
        if ok:
            gens.append(tuple(a))
    gin = MonomialIdeal.from_gens(
        ring, (_one_per_block_monomial(ring, a) for a in gens)
    )

    primes = []
    for mask in range(1, full + 1):
        support = [i for i in range(L.m) if mask & (1 << i)]
        target = b[mask] - len(support) + 1
        if target < 0:
            continue
        for split in _compositions(target, len(support)):
            vec = [0] * L.m
            for pos, i in enumerate(support):
                vec[i] = split[pos]
            if all(vec[i] <= L.n for i in range(L.m)):
                primes.append(BorelPrime(ring, tuple(vec)))
    primes = _normalize_zero(gin, _prune_primes(primes))
    return GinResult(gin, primes, THEOREM_MAXMINORS_ROW)


def _one_per_block_monomial(ring: RingSpec, positions: Sequence[int]):
    mono = [0] * ring.nvars
    for block, a in enumerate(positions, start=1):
        mono[ring.var_index(block, a)] += 1
    return tuple(mono)


def _compositions(total: int, parts: int):
    """All ways to write ``total`` as an ordered sum of ``parts`` nonnegatives."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def gin_maxminors_row_maxcodim(L: GradedLinearMatrix) -> GinResult:
    """Specialized row-graded formula valid when the height is ``n - m + 1``.

    Generators need only the full-support constraint ``sum(a_i) <= n``;
    primes are all block-prefix primes with ``sum(a_i) = n - m + 1``.
    Verifies the height precondition on the general construction's output
    and checks that both formulas agree.
    """
    general = gin_maxminors_row(L)
    expected = L.n - L.m + 1
    actual = 0 if not general.primes else min(p.size() for p in general.primes)
    if actual != expected:
        raise CodimensionError(expected, actual)
    ring = L.ring
    gens = [
        _one_per_block_monomial(ring, a)
        for a in product(*(range(1, L.n + 1) for _ in range(L.m)))
        if sum(a) <= L.n
    ]
    gin = MonomialIdeal.from_gens(ring, gens)
    primes = tuple(
        BorelPrime(ring, vec) for vec in _compositions(expected, L.m)
    )
    result = GinResult(gin, primes, THEOREM_MAXMINORS_ROW_MAXCODIM)
    if result.gin != general.gin or set(p.a for p in result.primes) != set(
        p.a for p in general.primes
    ):
        raise AssertionError("specialized and general constructions disagree")
    return result


# ---------------------------------------------------------------------------
# maximal minors, column-graded


def gin_maxminors_col(L: GradedLinearMatrix) -> GinResult:
    """Column-graded maximal minors: gin and vertex-cover prime decomposition.

    Generators are the squarefree products of the top variables of the
    column blocks indexed by each nonvanishing maximal minor; primes come
    from the minimal vertex covers of those column sets.
    """
    if L.grading != COLUMN:
        raise PreconditionError("this construction needs a column-graded matrix")
    if L.m > L.n:
        raise PreconditionError("maximal minors need m <= n")
    ring = L.ring
    supports = nonzero_minor_supports(L)
    gens = []
    for cols in supports:
        mono = [0] * ring.nvars
        for j in cols:
            mono[ring.var_index(j, 1)] = 1
        gens.append(tuple(mono))
    gin = MonomialIdeal.from_gens(ring, gens)
    primes = []
    if supports:
        for cover in minimal_covers([frozenset(s) for s in supports]):
            vec = [1 if j in cover else 0 for j in range(1, L.n + 1)]
            primes.append(BorelPrime(ring, tuple(vec)))
        primes.sort(key=lambda p: (p.size(), p.a))
    return GinResult(gin, _normalize_zero(gin, primes), THEOREM_MAXMINORS_COL)


# ---------------------------------------------------------------------------
# Borel ideals attached to a monotone map


def _phi_ring(phi: PhiMap) -> RingSpec:
    return RingSpec(phi.d)


def borel_ideal_from_phi(phi: PhiMap, ring: Optional[RingSpec] = None) -> MonomialIdeal:
    """The radical Borel ideal whose quotient realizes the series of ``phi``.

    For every nonempty subset ``A`` it takes the products of one variable
    ``x[i, b_i]`` per block ``i`` in ``A`` with ``1 <= b_i <= d_i`` and
    ``sum(d_i - b_i, i in A) >= phi(A)``, where ``d_i = phi({i})``.  By
    default the ideal lives in the ring with block sizes ``d_i``; an
    ambient ring with at least that many variables per block may be given.
    """
    d = phi.d
    if ring is None:
        ring = _phi_ring(phi)
    if ring.v != phi.m or any(ring.block_sizes[i] < d[i] for i in range(phi.m)):
        raise ValueError("ambient ring too small for the map's caps")
    gens = []
    for mask in range(1, 1 << phi.m):
        support = [i for i in range(phi.m) if mask & (1 << i)]
        bound = phi.value(mask)
        ranges = [range(1, d[i] + 1) for i in support]
        for bs in product(*ranges):
            if sum(d[support[t]] - bs[t] for t in range(len(support))) >= bound:
                mono = [0] * ring.nvars
                for t, i in enumerate(support):
                    mono[ring.var_index(i + 1, bs[t])] = 1
                gens.append(tuple(mono))
    return MonomialIdeal.from_gens(ring, gens)


def prime_containment_predicate(v: Sequence[int], phi: PhiMap) -> bool:
    """Whether the block-prefix prime with prefix vector ``v`` contains the ideal.

    The criterion is ``sum(v_i) >= sum(d_i) - phi(A(v)) - |A(v)| + 1`` with
    ``A(v) = {i : v_i < d_i}``.
    """
    d = phi.d
    v = tuple(int(x) for x in v)
    if len(v) != phi.m or any(not 0 <= v[i] <= d[i] for i in range(phi.m)):
        raise ValueError("prefix vector out of range")
    mask = 0
    for i in range(phi.m):
        if v[i] < d[i]:
            mask |= 1 << i
    size = bin(mask).count("1")
    return sum(v) >= sum(d) - phi.value(mask) - size + 1


def primes_from_phi(phi: PhiMap, ring: Optional[RingSpec] = None) -> list:
    """Irredundant prime decomposition of :func:`borel_ideal_from_phi`.

    Selects the prefix vectors ``v`` with ``0 <= v_i <= d_i`` that meet the
    containment bound with equality and whose defect set ``A(v)`` is
    maximal for the value of the map: the map must drop strictly on every
    proper superset of ``A(v)``.
    """
    d = phi.d
    if ring is None:
        ring = _phi_ring(phi)
    full = (1 << phi.m) - 1
    out = []
    for v in product(*(range(0, di + 1) for di in d)):
        mask = 0
        for i in range(phi.m):
            if v[i] < d[i]:
                mask |= 1 << i
        size = bin(mask).count("1")
        if sum(v) != sum(d) - phi.value(mask) - size + 1:
            continue
        strict = True
        # iterate strict supersets of the defect set
        rest = full & ~mask
        sub = rest
        while sub:
            if phi.value(mask | sub) >= phi.value(mask):
                strict = False
                break
            sub = (sub - 1) & rest
        if strict:
            out.append(BorelPrime(ring, v))
    out.sort(key=lambda p: (p.size(), p.a))
    return out


# ---------------------------------------------------------------------------
# 2-minors


def gin_2minors(L: GradedLinearMatrix) -> GinResult:
    """2-minors of a row-graded matrix: gin and primes via the kernel map.

    Computes ``phi(A) = n - dim V_A`` and the caps ``d_i = n - dim V_i``,
    then delegates to the Borel-ideal machinery in the ambient ring.  The
    published generator bound ``sum(b_i, i in A) <= n(|A|-1) + dim V_A -
    sum(dim V_i)`` is algebraically the same inequality; both forms are
    evaluated and cross-checked on every call.
    """
    if L.grading != ROW:
        raise PreconditionError("this construction needs a row-graded matrix")
    if L.m < 2 or L.n < 2:
        raise PreconditionError("2-minors need at least two rows and two columns")
    ring = L.ring
    phi = phi_from_kernels(L)
    d = phi.d
    dim_v = tuple(L.n - di for di in d)

    gin = borel_ideal_from_phi(phi, ring)
    _cross_check_two_minor_bound(L, phi, d, dim_v)
    primes = primes_from_phi(phi, ring)
    primes = _normalize_zero(gin, primes)
    return GinResult(gin, tuple(primes), THEOREM_TWO_MINORS)


def _cross_check_two_minor_bound(L, phi, d, dim_v):
    """Assert the two published forms of the generator inequality agree."""
    for mask in range(1, 1 << phi.m):
        support = [i for i in range(phi.m) if mask & (1 << i)]
        dim_va = L.n - phi.value(mask)
        rhs = L.n * (len(support) - 1) + dim_va - sum(dim_v[i] for i in support)
        for bs in product(*(range(1, d[i] + 1) for i in support)):
            lemma_form = (
                sum(d[support[t]] - bs[t] for t in range(len(support))) >= phi.value(mask)
            )
            theorem_form = sum(bs) <= rhs
            if lemma_form != theorem_form:
                raise AssertionError("generator bounds disagree; invariant computation is wrong")
