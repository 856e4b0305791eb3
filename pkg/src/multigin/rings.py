"""Block-graded polynomial rings: monomials, term orders, sparse polynomials.

The ambient ring has ``v`` grading blocks; block ``i`` contributes
``block_sizes[i]`` variables, each of multidegree ``e_i``.  Variables are
flattened block-major into indices ``0..nvars-1`` and a monomial is a dense
exponent tuple over that flat range.  Exponent tuples are canonical and
hashable, which makes ideal and Groebner bookkeeping a matter of dict and
set operations.

The flattening fixes the global variable ranking: within a block the
lower-indexed variable is larger, and block 1's variables dominate block
2's, and so on.  All default term orders refine that ranking.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence

from .errors import ResourceError
from .fields import Field

Monomial = tuple  # dense exponent tuple, one slot per flattened variable

OrderKind = Literal["lex", "deglex", "degrevlex"]


# ---------------------------------------------------------------------------
# ring layout


@dataclass(frozen=True)
class RingSpec:
    """Variable layout of a Z^v-graded polynomial ring.

    ``labels`` override the rendered variable names (needed when the block
    structure is transposed relative to the matrix coordinates, as for
    column-graded matrices).  A block size of zero is legal: the ring built
    from a map with a vanished single-block value simply has no variables in
    that block.
    """

    block_sizes: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        sizes = tuple(int(u) for u in self.block_sizes)
        if any(u < 0 for u in sizes):
            raise ValueError("negative block size")
        object.__setattr__(self, "block_sizes", sizes)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != sum(sizes):
                raise ValueError("label count does not match variable count")
            object.__setattr__(self, "labels", labels)

    @property
    def v(self) -> int:
        return len(self.block_sizes)

    @property
    def nvars(self) -> int:
        return sum(self.block_sizes)

    @property
    def offsets(self) -> tuple:
        out = []
        acc = 0
        for u in self.block_sizes:
            out.append(acc)
            acc += u
        return tuple(out)

    def var_index(self, block: int, index: int) -> int:
        """Flat index of variable ``index`` of ``block`` (both 1-based)."""
        if not 1 <= block <= self.v:
            raise IndexError(f"block {block} out of range 1..{self.v}")
        if not 1 <= index <= self.block_sizes[block - 1]:
            raise IndexError(
                f"variable index {index} out of range 1..{self.block_sizes[block - 1]}"
            )
        return self.offsets[block - 1] + index - 1

    def var_id(self, flat: int) -> tuple:
        """Inverse of :meth:`var_index`: flat index -> 1-based ``(block, index)``."""
        if not 0 <= flat < self.nvars:
            raise IndexError(f"variable {flat} out of range")
        for i, off in enumerate(self.offsets):
            if off <= flat < off + self.block_sizes[i]:
                return (i + 1, flat - off + 1)
        raise IndexError(flat)

    def var_name(self, flat: int) -> str:
        if self.labels is not None:
            return self.labels[flat]
        i, j = self.var_id(flat)
        return f"x[{i},{j}]"

    def block_of(self, flat: int) -> int:
        """1-based block of a flat variable index."""
        return self.var_id(flat)[0]

    def one(self) -> Monomial:
        return (0,) * self.nvars

    def variable(self, block: int, index: int) -> Monomial:
        mono = [0] * self.nvars
        mono[self.var_index(block, index)] = 1
        return tuple(mono)

    def multidegree(self, mono: Monomial) -> tuple:
        degs = [0] * self.v
        offsets = self.offsets
        for i in range(self.v):
            degs[i] = sum(mono[offsets[i] : offsets[i] + self.block_sizes[i]])
        return tuple(degs)


# ---------------------------------------------------------------------------
# monomial helpers (dense exponent tuples)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """Quotient ``b / a``; requires divisibility."""
    out = tuple(y - x for x, y in zip(a, b))
    if any(e < 0 for e in out):
        raise ValueError("division with negative exponent")
    return out


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_is_squarefree(a: Monomial) -> bool:
    return all(e <= 1 for e in a)


def mono_support(a: Monomial) -> tuple:
    return tuple(i for i, e in enumerate(a) if e > 0)


def render_monomial(ring: RingSpec, mono: Monomial) -> str:
    if not any(mono):
        return "1"
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(ring.var_name(i))
        elif e > 1:
            parts.append(f"{ring.var_name(i)}^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class TermOrder:
    """A multiplicative monomial well-order.

    ``ranking`` lists flat variable indices from largest to smallest.  The
    sort key returned by :meth:`key` is a flat integer tuple, so monomials
    compare with plain tuple comparison and can be pushed on heaps.
    """

    kind: OrderKind
    ranking: tuple

    @staticmethod
    def make(
        ring: RingSpec,
        kind: OrderKind = "degrevlex",
        ranking: Optional[Sequence[int]] = None,
        enforce_block_convention: bool = True,
    ) -> "TermOrder":
        if kind not in ("lex", "deglex", "degrevlex"):
            raise ValueError(f"unknown order kind {kind!r}")
        if ranking is None:
            ranking = tuple(range(ring.nvars))
        ranking = tuple(ranking)
        if sorted(ranking) != list(range(ring.nvars)):
            raise ValueError("ranking must be a permutation of the variables")
        if enforce_block_convention:
            position = {v: t for t, v in enumerate(ranking)}
            for block in range(1, ring.v + 1):
                size = ring.block_sizes[block - 1]
                for j in range(1, size):
                    hi = ring.var_index(block, j)
                    lo = ring.var_index(block, j + 1)
                    if position[hi] > position[lo]:
                        raise ValueError(
                            f"ranking violates the in-block convention "
                            f"{ring.var_name(hi)} > {ring.var_name(lo)}"
                        )
        return TermOrder(kind, ranking)

    def key(self, mono: Monomial):
        """Flat integer tuple; larger key means larger monomial."""
        r = self.ranking
        if self.kind == "lex":
            return tuple(mono[v] for v in r)
        if self.kind == "deglex":
            return (sum(mono),) + tuple(mono[v] for v in r)
        # degrevlex: degree first, then the *smallest* variable in which the
        # monomials differ decides, with the smaller exponent winning
        return (sum(mono),) + tuple(-mono[v] for v in reversed(r))

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0 or 1 as ``a`` is smaller than, equal to, or larger than ``b``."""
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def max_monomial(self, monos: Iterable[Monomial]) -> Monomial:
        return max(monos, key=self.key)

    def sorted_desc(self, monos: Iterable[Monomial]) -> list:
        return sorted(monos, key=self.key, reverse=True)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse exact-coefficient polynomial in a block-graded ring."""

    __slots__ = ("ring", "field", "terms")

    def __init__(self, ring: RingSpec, field: Field, terms: Optional[dict] = None):
        self.ring = ring
        self.field = field
        self.terms: dict = {}
        if terms:
            for mono, coeff in terms.items():
                if not field.is_zero(coeff):
                    self.terms[mono] = coeff

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(ring: RingSpec, field: Field) -> "Polynomial":
        return Polynomial(ring, field)

    @staticmethod
    def constant(ring: RingSpec, field: Field, value) -> "Polynomial":
        value = field.convert(value)
        return Polynomial(ring, field, {ring.one(): value})

    @staticmethod
    def variable(ring: RingSpec, field: Field, block: int, index: int) -> "Polynomial":
        return Polynomial(ring, field, {ring.variable(block, index): field.one})

    @staticmethod
    def from_monomial(ring: RingSpec, field: Field, mono: Monomial) -> "Polynomial":
        return Polynomial(ring, field, {tuple(mono): field.one})

    # -- plumbing ------------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.ring != other.ring or self.field != other.field:
            raise ValueError("polynomials from different rings")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.field, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        f = self.field
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = f.add(out.get(mono, f.zero), coeff)
            if f.is_zero(acc):
                out.pop(mono, None)
            else:
                out[mono] = acc
        result = Polynomial.zero(self.ring, f)
        result.terms = out
        return result

    def __neg__(self) -> "Polynomial":
        f = self.field
        result = Polynomial.zero(self.ring, f)
        result.terms = {mono: f.neg(c) for mono, c in self.terms.items()}
        return result

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        f = self.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(x + y for x, y in zip(m1, m2))
                acc = f.add(out.get(mono, f.zero), f.mul(c1, c2))
                if f.is_zero(acc):
                    out.pop(mono, None)
                else:
                    out[mono] = acc
        result = Polynomial.zero(self.ring, f)
        result.terms = out
        return result

    def scalar_mul(self, c) -> "Polynomial":
        f = self.field
        c = f.convert(c)
        if f.is_zero(c):
            return Polynomial.zero(self.ring, f)
        result = Polynomial.zero(self.ring, f)
        result.terms = {mono: f.mul(c, coeff) for mono, coeff in self.terms.items()}
        return result

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.ring, self.field, 1)
        for _ in range(n):
            result = result * self
        return result

    # -- structure -----------------------------------------------------------

    def leading_term(self, order: TermOrder) -> tuple:
        """Order-maximal ``(monomial, coefficient)``; rejects the zero polynomial."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def leading_monomial(self, order: TermOrder) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: TermOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        return self.scalar_mul(self.field.inv(c))

    def multidegree(self) -> tuple:
        """Common multidegree of all terms; rejects inhomogeneous polynomials."""
        if not self.terms:
            raise ValueError("the zero polynomial has no multidegree")
        degs = {self.ring.multidegree(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not multigraded-homogeneous")
        return next(iter(degs))

    def is_homogeneous(self) -> bool:
        return len({self.ring.multidegree(m) for m in self.terms}) <= 1

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """Fixed text form: ``x[i,j]^e`` factors joined by ``*``, terms by +/-."""
        if not self.terms:
            return "0"
        monos = sorted(self.terms, key=lambda m: (sum(m), m), reverse=True)
        pieces = []
        f = self.field
        for mono in monos:
            coeff = self.terms[mono]
            text = str(coeff)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            mono_text = render_monomial(self.ring, mono)
            if mono_text == "1":
                body = text
            elif text == "1":
                body = mono_text
            else:
                body = f"{text}*{mono_text}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({self.render()})"


# ---------------------------------------------------------------------------
# division


def _reduce_terms(
    work: dict,
    reducers: Sequence[tuple],
    order: TermOrder,
    field: Field,
    budget: Optional[list] = None,
) -> dict:
    """Full normal-form reduction of a term dict, in place.

    ``reducers`` holds ``(leading_monomial, inv_leading_coeff, terms_dict)``
    triples; the first reducer whose leading monomial divides the current
    leading monomial is used (deterministic).  Returns the remainder dict.
    ``budget``, when given, is a one-element list counting terms created; it
    is decremented and exhausting it raises ``ResourceError``.
    """
    key = order.key
    remainder: dict = {}
    heap: list = []
    for mono in work:
        heapq.heappush(heap, tuple(-k for k in key(mono)))
    keyed = {tuple(-k for k in key(m)): m for m in work}
    zero_test = field.is_zero
    while heap:
        neg = heapq.heappop(heap)
        mono = keyed.get(neg)
        if mono is None or mono not in work:
            continue
        coeff = work.pop(mono)
        hit = None
        for lm, inv_lc, terms in reducers:
            if mono_divides(lm, mono):
                hit = (lm, inv_lc, terms)
                break
        if hit is None:
            remainder[mono] = coeff
            continue
        lm, inv_lc, terms = hit
        shift = tuple(x - y for x, y in zip(mono, lm))
        factor = field.mul(coeff, inv_lc)
        if budget is not None:
            budget[0] -= len(terms)
            if budget[0] < 0:
                raise ResourceError("monomial budget exhausted during reduction")
        for tmono, tcoeff in terms.items():
            if tmono == lm:
                continue
            target = tuple(x + y for x, y in zip(shift, tmono))
            acc = field.sub(work.get(target, field.zero), field.mul(factor, tcoeff))
            if zero_test(acc):
                work.pop(target, None)
            else:
                if target not in work:
                    negk = tuple(-k for k in key(target))
                    keyed[negk] = target
                    heapq.heappush(heap, negk)
                work[target] = acc
    return remainder


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Remainder of ``f`` on division by ``basis``.

    No term of the result is divisible by the leading monomial of any basis
    element, and ``f - normal_form(f)`` lies in the ideal the basis
    generates.  The reducer-selection rule (first match in input order)
    makes the output deterministic and linear in ``f``.
    """
    if any(g.is_zero() for g in basis):
        raise ValueError("zero polynomial among the divisors")
    for g in basis:
        f._check_compatible(g)
    fld = f.field
    reducers = []
    for g in basis:
        lm, lc = g.leading_term(order)
        reducers.append((lm, fld.inv(lc), g.terms))
    remainder = _reduce_terms(dict(f.terms), reducers, order, fld)
    result = Polynomial.zero(f.ring, fld)
    result.terms = remainder
    return result
