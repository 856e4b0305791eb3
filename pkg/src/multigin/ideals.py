"""Monomial-ideal algebra.

Minimal generators, membership, intersection, radicality, the
Borel-fixedness exchange test, minimal primes of squarefree ideals via
minimal vertex covers, Alexander duality, and codimension.

Conventions: the zero ideal has no generators, no minimal primes, and
codimension 0.  The unit ideal is rejected as input to the prime and
duality operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .rings import (
    Monomial,
    RingSpec,
    mono_divides,
    mono_is_squarefree,
    mono_lcm,
    mono_support,
    render_monomial,
)


def _canonical(gens: Iterable[Monomial]) -> tuple:
    """Divisibility-minimal generators in a fixed (degree, exponents) order."""
    unique = sorted(set(tuple(g) for g in gens), key=lambda m: (sum(m), m))
    minimal: list = []
    for g in unique:
        if any(mono_divides(h, g) for h in minimal):
            continue
        minimal.append(g)
    return tuple(minimal)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored by its canonical minimal generating set."""

    ring: RingSpec
    gens: tuple

    @staticmethod
    def from_gens(ring: RingSpec, gens: Iterable[Monomial]) -> "MonomialIdeal":
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != ring.nvars or any(e < 0 for e in g):
                raise ValueError(f"bad exponent tuple {g} for this ring")
        return MonomialIdeal(ring, _canonical(gens))

    @staticmethod
    def zero(ring: RingSpec) -> "MonomialIdeal":
        return MonomialIdeal(ring, ())

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def contains(self, mono: Monomial) -> bool:
        """Membership: some minimal generator divides the monomial."""
        mono = tuple(mono)
        return any(mono_divides(g, mono) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def render_gens(self) -> list:
        return [render_monomial(self.ring, g) for g in self.gens]

    def to_json(self) -> dict:
        return {"gens": self.render_gens()}


def minimalize(ring: RingSpec, gens: Iterable[Monomial]) -> MonomialIdeal:
    return MonomialIdeal.from_gens(ring, gens)


def intersect(ideals: Sequence[MonomialIdeal]) -> MonomialIdeal:
    """Exact intersection via the pairwise-lcm construction, folded and minimalized."""
    if not ideals:
        raise ValueError("intersection of an empty list of ideals is undefined")
    ring = ideals[0].ring
    if any(i.ring != ring for i in ideals):
        raise ValueError("ideals from different rings")
    current = ideals[0].gens
    for other in ideals[1:]:
        current = _canonical(
            mono_lcm(a, b) for a in current for b in other.gens
        )
    return MonomialIdeal(ring, current)


def is_radical(ideal: MonomialIdeal) -> bool:
    """A monomial ideal is radical iff its minimal generators are squarefree."""
    return all(mono_is_squarefree(g) for g in ideal.gens)


def _binom_nonzero(c: int, d: int, char: int) -> bool:
    if char == 0:
        return True
    # Lucas: binom(c, d) is nonzero mod p iff no base-p digit of d exceeds c's
    while c or d:
        if d % char > c % char:
            return False
        c //= char
        d //= char
    return True


def is_borel_fixed(ideal: MonomialIdeal, char: int = 0) -> bool:
    """Exchange test for stability under upper-triangular coordinate changes.

    For every generator, every block, every swap of a used variable with a
    larger one of the same block, and every admissible exponent step ``d``
    (those with nonvanishing binomial coefficient in the coefficient
    field), the exchanged monomial must lie in the ideal.
    """
    ring = ideal.ring
    for gen in ideal.gens:
        for flat, c in enumerate(gen):
            if c == 0:
                continue
            block, j = ring.var_id(flat)
            for k in range(1, j):
                target = ring.var_index(block, k)
                for d in range(1, c + 1):
                    if not _binom_nonzero(c, d, char):
                        continue
                    moved = list(gen)
                    moved[flat] -= d
                    moved[target] += d
                    if not ideal.contains(tuple(moved)):
                        return False
    return True


def minimal_covers(edges: Sequence[frozenset]) -> list:
    """All inclusion-minimal transversals of a set system, by incremental branching."""
    covers = [frozenset()]
    for edge in edges:
        grown = []
        for cover in covers:
            if cover & edge:
                grown.append(cover)
            else:
                grown.extend(cover | {v} for v in sorted(edge))
        # prune to the antichain of minimal sets
        grown = sorted(set(grown), key=len)
        pruned: list = []
        for cand in grown:
            if any(kept <= cand for kept in pruned):
                continue
            pruned.append(cand)
        covers = pruned
    return covers


def minimal_primes_squarefree(ideal: MonomialIdeal) -> list:
    """Minimal primes of a radical monomial ideal, as sorted variable-index sets.

    These are the minimal vertex covers of the hypergraph whose edges are
    the supports of the minimal generators.  The zero ideal has no primes;
    the unit ideal is rejected.
    """
    if not is_radical(ideal):
        raise ValueError("minimal primes supported for radical monomial ideals only")
    if ideal.is_unit():
        raise ValueError("the unit ideal has no minimal primes")
    if ideal.is_zero():
        return []
    edges = [frozenset(mono_support(g)) for g in ideal.gens]
    return [tuple(sorted(cover)) for cover in sorted(minimal_covers(edges), key=sorted)]


def variable_prime(ring: RingSpec, variables: Iterable[int]) -> MonomialIdeal:
    """The prime generated by the given flat variable indices."""
    gens = []
    for v in variables:
        mono = [0] * ring.nvars
        mono[v] = 1
        gens.append(tuple(mono))
    return MonomialIdeal.from_gens(ring, gens)


def alexander_dual(ideal: MonomialIdeal) -> MonomialIdeal:
    """Squarefree duality exchanging generator supports and minimal primes."""
    if not is_radical(ideal):
        raise ValueError("Alexander dual supported for radical monomial ideals only")
    if ideal.is_zero() or ideal.is_unit():
        raise ValueError("Alexander dual of the zero or unit ideal is out of scope")
    ring = ideal.ring
    gens = []
    for cover in minimal_primes_squarefree(ideal):
        mono = [0] * ring.nvars
        for v in cover:
            mono[v] = 1
        gens.append(tuple(mono))
    return MonomialIdeal.from_gens(ring, gens)


def codim(ideal: MonomialIdeal) -> int:
    """Height: minimum cardinality over the minimal primes; 0 for the zero ideal."""
    if ideal.is_zero():
        return 0
    primes = minimal_primes_squarefree(ideal)
    return min(len(p) for p in primes)


@dataclass(frozen=True)
class BorelPrime:
    """Prime generated by the first ``a_i`` variables of each block."""

    ring: RingSpec
    a: tuple

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if len(a) != self.ring.v:
            raise ValueError("prefix vector length must match the block count")
        for i, ai in enumerate(a):
            if not 0 <= ai <= self.ring.block_sizes[i]:
                raise ValueError(f"prefix {ai} out of range for block {i + 1}")
        object.__setattr__(self, "a", a)

    def variables(self) -> tuple:
        out = []
        for block in range(1, self.ring.v + 1):
            for j in range(1, self.a[block - 1] + 1):
                out.append(self.ring.var_index(block, j))
        return tuple(out)

    def to_ideal(self) -> MonomialIdeal:
        return variable_prime(self.ring, self.variables())

    def contains(self, other: "BorelPrime") -> bool:
        """Ideal containment: prefix vectors compare componentwise."""
        if self.ring != other.ring:
            raise ValueError("primes from different rings")
        return all(x >= y for x, y in zip(self.a, other.a))

    def size(self) -> int:
        return sum(self.a)

    def render(self) -> list:
        return [self.ring.var_name(v) for v in self.variables()]
