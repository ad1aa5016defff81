"""Exact classification of regular subalgebras of simple Lie algebras as wide or narrow."""

__version__ = "0.1.0"

from .closedsets import (
    ClosedSubset,
    are_weyl_conjugate,
    closure,
    enumerate_closed_subsets,
    is_closed,
    is_full,
    symmetrized_closure,
)
from .fflv import enumerate_dyck_paths, enumerate_fflv_basis, is_admissible, lemma_nonzero_holds
from .repmod import (
    ExplicitModule,
    RegularSubalgebra,
    adjoint_module,
    annihilated_subspace,
    generated_submodule,
    regular_subalgebra,
    typeA_module,
    weight_spaces,
)
from .rootsys import RootSystem, Weight, build_root_system, pairing, structure_constant, weyl_elements
from .wideness import (
    classify,
    commutant,
    is_indecomposable_restriction,
    is_lambda_wide,
    is_wide,
    wide_via_adjoint,
)

__all__ = [
    "__version__",
    "ClosedSubset",
    "ExplicitModule",
    "RegularSubalgebra",
    "RootSystem",
    "Weight",
    "adjoint_module",
    "annihilated_subspace",
    "are_weyl_conjugate",
    "build_root_system",
    "classify",
    "closure",
    "commutant",
    "enumerate_closed_subsets",
    "enumerate_dyck_paths",
    "enumerate_fflv_basis",
    "generated_submodule",
    "is_admissible",
    "is_closed",
    "is_full",
    "is_indecomposable_restriction",
    "is_lambda_wide",
    "is_wide",
    "lemma_nonzero_holds",
    "pairing",
    "regular_subalgebra",
    "structure_constant",
    "symmetrized_closure",
    "typeA_module",
    "weight_spaces",
    "weyl_elements",
    "wide_via_adjoint",
]
