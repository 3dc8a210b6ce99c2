"""Exact-arithmetic cohomology, central extensions and formal
deformations of 3-Lie algebras equipped with a derivation.

All computation is over Q with ``fractions.Fraction`` scalars; nothing
is ever rounded.  Values are immutable after construction and safe to
share between threads.
"""

from .cochains import (
    Cochain,
    PairCochain,
    bracket,
    bracket_cochain,
    circ,
    d,
    delta,
    is_fully_antisymmetric,
    pair_d,
)
from .cohomology import (
    CohomologyReport,
    betti,
    cohomologous,
    is_coboundary,
    is_cocycle,
    kernel_basis,
    matrix_of_d,
    matrix_of_delta,
    matrix_of_pair_d,
    plain_betti,
    plain_is_coboundary,
    plain_is_cocycle,
    rank,
    solve,
)
from .core import (
    DerModule,
    LieDerPair,
    Representation,
    ThreeLieAlgebra,
    ValidationReport,
    Violation,
    adjoint_module,
    adjoint_rep,
    derivation_report,
    derivation_space,
    is_derivation,
    semidirect,
    trivial_rep,
    validate_3lie,
    validate_der_module,
    validate_representation,
)
from .deformations import (
    Deformation,
    DeformationReport,
    FormalIso,
    TrivializeResult,
    apply_equivalence,
    extend_deformation,
    infinitesimal,
    obstruction,
    trivialize_up_to,
    validate_deformation,
)
from .errors import InputError
from .extensions import (
    AlgebraExtension,
    CentralExtension,
    CocycleViolation,
    build_central_extension,
    classify_extensions,
    derivation_obstruction,
    extend_derivation_pair,
    extract_cocycle,
    validate_central_extension,
)
from .linalg import QMatrix, left_inverse
from .rationals import Scalar, format_scalar, parse_scalar

__version__ = "0.1.0"
