"""Exact coefficient fields: the rationals and prime fields.

Scalars are plain Python values (``fractions.Fraction`` over Q, ints in
``[0, p)`` over F_p); a :class:`Field` object supplies the arithmetic.
Keeping elements unboxed makes the Groebner kernel fast enough to run
hundreds of desk-scale verifications.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

DEFAULT_PRIME = 32003

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin, valid far beyond any prime we accept here
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Arithmetic context; subclasses implement the operations exactly."""

    char: int

    def convert(self, x: Any):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def random(self, rng):
        """Uniform sample (large range over Q) for generic coordinate changes."""
        raise NotImplementedError

    def scalar_to_json(self, a):
        raise NotImplementedError

    def scalar_from_json(self, obj):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class RationalField(Field):
    """The field Q; elements are ``Fraction`` (always in lowest terms)."""

    char = 0

    def convert(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def random(self, rng):
        return Fraction(rng.randint(-1000, 1000))

    def scalar_to_json(self, a):
        a = self.convert(a)
        if a.denominator == 1:
            return int(a)
        return f"{a.numerator}/{a.denominator}"

    def scalar_from_json(self, obj):
        if isinstance(obj, bool):
            raise TypeError("boolean is not a rational coefficient")
        if isinstance(obj, (int, str)):
            return self.convert(obj)
        raise TypeError(f"bad rational coefficient {obj!r}")

    def to_json(self):
        return {"kind": "Q"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """F_p for a prime p; elements are ints reduced into ``[0, p)``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def convert(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def random(self, rng):
        return rng.randrange(self.p)

    def scalar_to_json(self, a):
        return self.convert(a)

    def scalar_from_json(self, obj):
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise TypeError(f"bad F_{self.p} coefficient {obj!r}")
        return obj % self.p

    def to_json(self):
        return {"kind": "Fp", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_json(obj) -> Field:
    """Parse ``{"kind": "Q"}`` or ``{"kind": "Fp", "p": <prime>}``."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"bad field descriptor {obj!r}")
    kind = obj["kind"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        p = obj.get("p", DEFAULT_PRIME)
        if isinstance(p, bool) or not isinstance(p, int):
            raise ValueError(f"bad prime {p!r}")
        return PrimeField(p)
    raise ValueError(f"unknown field kind {kind!r}")
