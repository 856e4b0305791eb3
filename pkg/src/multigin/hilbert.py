"""Multigraded Hilbert series, truncated at a total degree.

Two independent routes to the same coefficients: the closed binomial form
attached to a monotone subset map, and brute-force counting of the
monomials outside a monomial ideal.  Their coefficientwise agreement is
the package's central executable identity.  A separately testable
summation identity underpins the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .gradedmatrix import PhiMap
from .ideals import MonomialIdeal
from .rings import RingSpec

DEFAULT_CAP = 8
DEFAULT_ENUM_LIMIT = 2_000_000


def binom(n: int, k: int) -> int:
    """Binomial coefficient with the usual vanishing conventions.

    Zero whenever ``k < 0``, ``n < 0`` or ``k > n``; this makes the closed
    form evaluate to zero for supports on which the map vanishes.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass
class TruncatedMultiSeries:
    """Integer power series in ``m`` variables, kept up to total degree ``cap``."""

    m: int
    cap: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for deg, c in self.coeffs.items():
            deg = tuple(int(x) for x in deg)
            if len(deg) != self.m or any(x < 0 for x in deg):
                raise ValueError(f"bad multidegree {deg}")
            if sum(deg) > self.cap:
                raise ValueError(f"multidegree {deg} beyond the truncation cap")
            if c:
                clean[deg] = int(c)
        self.coeffs = clean

    def coefficient(self, deg: Sequence[int]) -> int:
        return self.coeffs.get(tuple(deg), 0)

    def __eq__(self, other):
        if not isinstance(other, TruncatedMultiSeries):
            return NotImplemented
        return self.m == other.m and self.cap == other.cap and self.coeffs == other.coeffs

    def to_json(self) -> dict:
        ordered = sorted(self.coeffs, key=lambda d: (sum(d), d))
        return {
            "cap": self.cap,
            "coeffs": [{"deg": list(d), "c": self.coeffs[d]} for d in ordered],
        }


def multidegrees_up_to(m: int, cap: int) -> Iterable[tuple]:
    """All vectors in N^m with total degree at most ``cap``."""

    def rec(parts, remaining):
        if parts == 1:
            for last in range(remaining + 1):
                yield (last,)
            return
        for first in range(remaining + 1):
            for rest in rec(parts - 1, remaining - first):
                yield (first,) + rest

    return rec(m, cap)


def h_phi_series(phi: PhiMap, cap: int = DEFAULT_CAP) -> TruncatedMultiSeries:
    """Closed form: coefficient ``binom(phi(supp a) - 1 + |a|, phi(supp a) - 1)``."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    coeffs = {}
    for deg in multidegrees_up_to(phi.m, cap):
        mask = 0
        for i, x in enumerate(deg):
            if x > 0:
                mask |= 1 << i
        value = phi.value(mask)
        c = binom(value - 1 + sum(deg), value - 1)
        if c:
            coeffs[deg] = c
    return TruncatedMultiSeries(phi.m, cap, coeffs)


def _block_exponents(size: int, degree: int) -> list:
    """All exponent vectors of the given total degree on ``size`` variables."""
    if size == 0:
        return [()] if degree == 0 else []
    return [vec for vec in _compositions(degree, size)]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _candidate_count(block_sizes: Sequence[int], deg: Sequence[int]) -> int:
    count = 1
    for u, a in zip(block_sizes, deg):
        if u == 0:
            if a > 0:
                return 0
            continue
        count *= comb(u - 1 + a, a)
    return count


def standard_monomial_count(
    ideal: MonomialIdeal, deg: Sequence[int], limit: int = DEFAULT_ENUM_LIMIT
) -> int:
    """Monomials of the given multidegree outside the ideal, by enumeration.

    The candidate monomials of the multidegree are materialized blockwise
    and screened against the minimal generators with vectorized
    divisibility tests.  Refuses multidegrees whose candidate count
    exceeds ``limit``.
    """
    ring = ideal.ring
    deg = tuple(int(x) for x in deg)
    if len(deg) != ring.v or any(x < 0 for x in deg):
        raise ValueError(f"bad multidegree {deg}")
    total = _candidate_count(ring.block_sizes, deg)
    if total > limit:
        raise ValueError(
            f"{total} candidate monomials at multidegree {deg} exceed the limit {limit}"
        )
    if total == 0:
        return 0
    blocks = []
    for u, a in zip(ring.block_sizes, deg):
        vecs = _block_exponents(u, a)
        blocks.append(np.array(vecs, dtype=np.int64).reshape(len(vecs), u))
    candidates = blocks[0]
    for nxt in blocks[1:]:
        left = np.repeat(candidates, len(nxt), axis=0)
        right = np.tile(nxt, (len(candidates), 1))
        candidates = np.hstack([left, right])
    if not ideal.gens:
        return len(candidates)
    inside = np.zeros(len(candidates), dtype=bool)
    for gen in ideal.gens:
        if any(
            g > d for g, d in zip(ideal.ring.multidegree(gen), deg)
        ):
            continue
        garr = np.array(gen, dtype=np.int64)
        inside |= (candidates >= garr).all(axis=1)
    return int(len(candidates) - inside.sum())


def series_of_quotient(
    ideal: MonomialIdeal, cap: int = DEFAULT_CAP, limit: int = DEFAULT_ENUM_LIMIT
) -> TruncatedMultiSeries:
    """Hilbert series of the quotient by a monomial ideal, coefficient by coefficient."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    ring = ideal.ring
    coeffs = {}
    for deg in multidegrees_up_to(ring.v, cap):
        c = standard_monomial_count(ideal, deg, limit=limit)
        if c:
            coeffs[deg] = c
    return TruncatedMultiSeries(ring.v, cap, coeffs)


def contract_to_prefix_ring(ideal: MonomialIdeal, caps: Sequence[int]) -> MonomialIdeal:
    """Reread an ideal inside the subring on the first ``caps[i]`` variables per block.

    The quotient by a gin whose caps are smaller than the ambient block
    sizes has extra free variables in the ambient ring; the closed-form
    series counts standard monomials in the capped subring, so series
    comparisons contract to it first.  Generators must already live there.
    """
    ring = ideal.ring
    caps = tuple(int(c) for c in caps)
    if len(caps) != ring.v or any(
        not 0 <= c <= u for c, u in zip(caps, ring.block_sizes)
    ):
        raise ValueError("caps must fit inside the ambient block sizes")
    small = RingSpec(caps)
    gens = []
    for gen in ideal.gens:
        mono = [0] * small.nvars
        for flat, e in enumerate(gen):
            if not e:
                continue
            block, index = ring.var_id(flat)
            if index > caps[block - 1]:
                raise ValueError(
                    f"generator uses {ring.var_name(flat)}, beyond the cap of block {block}"
                )
            mono[small.var_index(block, index)] = e
        gens.append(tuple(mono))
    return MonomialIdeal.from_gens(small, gens)


def binomial_identity_check(a: Sequence[int], u: int) -> bool:
    """Direct summation test of the counting identity behind the closed form.

    Sums ``prod binom(w_i + a_i - 1, a_i - 1)`` over all nonnegative ``w``
    with ``|w| <= u - 1`` and compares with ``binom(u - 1 + |a|, u - 1)``.
    """
    a = tuple(int(x) for x in a)
    if not a or any(x < 1 for x in a) or u < 1:
        raise ValueError("need positive entries and a positive variable count")
    total = 0
    for w in multidegrees_up_to(len(a), u - 1):
        term = 1
        for wi, ai in zip(w, a):
            term *= binom(wi + ai - 1, ai - 1)
        total += term
    return total == binom(u - 1 + sum(a), u - 1)
