"""Numerical rootfinding for square multivariate polynomial systems.

The pipeline: assemble the Macaulay matrix of the system, reduce it (direct
factorization, null-space, or incremental degree-by-degree null-space) to a
basis of the quotient algebra, build the commuting multiplication matrices,
and read the roots off a simultaneous diagonalization.  Companion modules
model FLOP costs of the pipelines and the conditioning of the eigenvalue
reformulation.
"""

from .analysis import (
    ConditioningRecord,
    conditioning_ratio,
    eig_condition,
    growth_rate,
    jacobian,
    root_condition,
)
from .combinatorics import (
    CountContext,
    alpha,
    macaulay_nullity,
    monomials_eq,
    monomials_leq,
    new_rows_at_degree,
    total_rows,
)
from .errors import BackendError, GenericityError, MacrootsError, SingularMatrixError
from .generators import clustered_conic, devastating, perturbed_devastating, random_dense
from .linalg import DEFAULT_TOL, Tolerances
from .macaulay import ColumnOrder, MacaulayMatrix, build_macaulay, column_order, extend_blocks
from .poly import (
    Polynomial,
    PolySystem,
    bezout_count,
    load_system,
    macaulay_degree,
    save_system,
    system_from_dict,
    system_to_dict,
)
from .reduction import (
    MethodConfig,
    ReductionResult,
    dbd_nullspace,
    direct_reduce,
    nullspace_reduce,
    random_combine,
)
from .solver import MSMatrices, RootResult, build_ms, product_indices, sim_diag, solve

__version__ = "0.1.0"

__all__ = [
    "BackendError",
    "ColumnOrder",
    "ConditioningRecord",
    "CountContext",
    "DEFAULT_TOL",
    "GenericityError",
    "MSMatrices",
    "MacaulayMatrix",
    "MacrootsError",
    "MethodConfig",
    "PolySystem",
    "Polynomial",
    "ReductionResult",
    "RootResult",
    "SingularMatrixError",
    "Tolerances",
    "alpha",
    "bezout_count",
    "build_macaulay",
    "build_ms",
    "clustered_conic",
    "column_order",
    "conditioning_ratio",
    "dbd_nullspace",
    "devastating",
    "direct_reduce",
    "eig_condition",
    "extend_blocks",
    "growth_rate",
    "jacobian",
    "load_system",
    "macaulay_degree",
    "macaulay_nullity",
    "monomials_eq",
    "monomials_leq",
    "new_rows_at_degree",
    "nullspace_reduce",
    "perturbed_devastating",
    "product_indices",
    "random_combine",
    "random_dense",
    "root_condition",
    "save_system",
    "sim_diag",
    "solve",
    "system_from_dict",
    "system_to_dict",
    "total_rows",
]
