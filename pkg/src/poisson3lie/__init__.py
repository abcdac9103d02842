"""Exact checkers and constructions for Poisson 3-Lie algebras, Hopf modules and their invariants."""

from .fields import GF, QQ, FieldError, PrimeField, Rationals, field_from_descriptor
from .hopf_compat import (
    ComodulePoissonTriLieAlgebra,
    PoissonTriLieHopfModule,
    acoH_invariants,
    as_hopf_module,
    check_comodule_poisson_algebra,
    check_hopf_module,
    check_invariant_subspaces,
    coinvariants,
)
from .linalg import LinearMap, QuotientSpace, Subspace, VectorSpace
from .report import CheckReport, CheckResult, Witness
from .structures import (
    AlgebraStructure,
    Coaction,
    HopfStructure,
    StructureError,
    check_algebra,
    check_comodule,
    check_hopf_algebra,
    grading_coaction,
    group_algebra,
    regular_coaction,
    trivial_coaction,
)
from .tensor import SparseTensor, einsum
from .trilie import (
    PoissonTriLieAlgebra,
    PoissonTriLieModule,
    TriBracket,
    TriLieModuleAction,
    adjoint_module,
    check_filippov,
    check_poisson_module,
    check_poisson_trilie,
    check_skew_symmetry,
    check_trilie_module,
    module_invariants,
    nambu_truncated,
    trilie_center,
    with_zero_bracket,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraStructure",
    "CheckReport",
    "CheckResult",
    "Coaction",
    "ComodulePoissonTriLieAlgebra",
    "FieldError",
    "GF",
    "HopfStructure",
    "LinearMap",
    "PoissonTriLieAlgebra",
    "PoissonTriLieHopfModule",
    "PoissonTriLieModule",
    "PrimeField",
    "QQ",
    "QuotientSpace",
    "Rationals",
    "SparseTensor",
    "StructureError",
    "Subspace",
    "TriBracket",
    "TriLieModuleAction",
    "VectorSpace",
    "Witness",
    "acoH_invariants",
    "adjoint_module",
    "as_hopf_module",
    "check_algebra",
    "check_comodule",
    "check_comodule_poisson_algebra",
    "check_filippov",
    "check_hopf_algebra",
    "check_hopf_module",
    "check_invariant_subspaces",
    "check_poisson_module",
    "check_poisson_trilie",
    "check_skew_symmetry",
    "check_trilie_module",
    "coinvariants",
    "einsum",
    "field_from_descriptor",
    "grading_coaction",
    "group_algebra",
    "module_invariants",
    "nambu_truncated",
    "regular_coaction",
    "trilie_center",
    "trivial_coaction",
    "with_zero_bracket",
]
