"""Multigraded generic initial ideals of determinantal ideals, exactly.

Closed-form gins and prime decompositions for maximal minors of
row/column-graded matrices of linear forms and for 2-minors, multigraded
Hilbert series, and an independent Groebner-basis oracle that recomputes
every answer from the definition on desk-scale instances.
"""

from .errors import (
    CodimensionError,
    OracleInstabilityError,
    PreconditionError,
    ResourceError,
    SchemaError,
)
from .fields import DEFAULT_PRIME, GF, QQ, Field, PrimeField, RationalField
from .formulas import (
    GinResult,
    borel_ideal_from_phi,
    gin_2minors,
    gin_maxminors_col,
    gin_maxminors_row,
    gin_maxminors_row_maxcodim,
    prime_containment_predicate,
    primes_from_phi,
)
from .gradedmatrix import (
    COLUMN,
    ROW,
    GradedLinearMatrix,
    PhiMap,
    all_two_minors,
    column_span_dim,
    entry_poly,
    instance_from_json,
    instance_to_json,
    maximal_minor,
    maximal_minor_polys,
    nonzero_minor_supports,
    phi_from_kernels,
    row_kernel,
)
from .hilbert import (
    TruncatedMultiSeries,
    binom,
    binomial_identity_check,
    h_phi_series,
    series_of_quotient,
    standard_monomial_count,
)
from .ideals import (
    BorelPrime,
    MonomialIdeal,
    alexander_dual,
    codim,
    intersect,
    is_borel_fixed,
    is_radical,
    minimal_primes_squarefree,
    minimalize,
)
from .instances import random_instance
from .linalg import DenseMatrix, kernel_basis, rank, rref, subspace_sum_dim
from .oracle import (
    CoordinateChange,
    GroebnerBasis,
    apply_change,
    buchberger,
    gin_oracle,
    initial_ideal,
    random_coordinate_change,
    three_minor_regression,
)
from .rings import Monomial, Polynomial, RingSpec, TermOrder, normal_form
from .verify import run_verification

__version__ = "0.1.0"
