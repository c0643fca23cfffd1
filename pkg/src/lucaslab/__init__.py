"""Exact arithmetic for generalized Lucas and Chebyshev sequences, with a
mechanically checked registry of summation identities."""

from .rings import (
    ContextMismatch,
    DivisionByZero,
    ExprSyntaxError,
    LaurentPoly,
    NonInvertibleSubstitution,
    NotDivisible,
    NotInvertible,
    QuadExt,
    Ring,
    RingElem,
    RingError,
)
from .sequences import (
    ChebSeq,
    DegenerateDiscriminant,
    LucasSeq,
    MissingArgument,
    SeqKind,
    UnexpectedArgument,
    WindowError,
    binet_roots,
    binet_value,
    cheb_t,
    cheb_u,
    lucas_u,
    lucas_uv_fast,
    lucas_v,
    named_term,
    telescope_sum,
)
from .identities import (
    DEFAULT_SEED,
    SYM,
    CheckReport,
    DomainError,
    IdentityRecord,
    ParamAssignment,
    UnknownIdentity,
    check_all,
    check_case,
    check_grid,
    get_record,
    registry,
    report_to_dict,
)

__version__ = "0.1.0"
