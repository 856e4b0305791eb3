"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SchemaError(ValueError):
    """Instance JSON does not match the documented schema."""


class PreconditionError(ValueError):
    """Operation called with the wrong grading, shape, or size."""


class CodimensionError(PreconditionError):
    """Maximal-codimension specialization applied to an ideal that lacks it."""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"codimension is {actual}, the specialized formula needs {expected}")
        self.expected = expected
        self.actual = actual


class ResourceError(RuntimeError):
    """A Groebner computation exceeded its configured pair or term budget."""


class OracleInstabilityError(RuntimeError):
    """Independent random coordinate changes kept disagreeing; genericity not certified."""
