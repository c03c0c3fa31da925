"""Exact computation with uniserial module varieties over bounden quiver
algebras: affine coordinates, Grassmannian chart subspaces, normalized
matrix representations, and degeneration-impossibility certificates."""

from .enumeration import count_uniserial_subspaces, enumerate_points, fibres
from .errors import BudgetExceededError, UnisvarError
from .fields import QQ, PrimeField
from .grassmann import (
    Subspace,
    is_submodule,
    pluecker_coords,
    quotient_is_uniserial,
    recover_point,
    submodule_closure,
    submodule_from_point,
    uniserial_quotient,
)
from .modvar import (
    MatrixRep,
    hom_space,
    is_isomorphic,
    module_from_point,
    no_degeneration_certificate,
    point_from_module,
    satisfies_relations,
    socle_and_quotient,
)
from .quiver import AlgebraElement, PathWord, Quiver
from .quiverfile import load_system, parse_quiver_file
from .rewriting import ReductionSystem, build_reduction_system
from .uniserial import (
    SimpleSequence,
    classify_route,
    detours,
    evaluate_point,
    masts,
    reduce_route_symbolic,
    special_basis,
    variety_equations,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "BudgetExceededError",
    "MatrixRep",
    "PathWord",
    "PrimeField",
    "QQ",
    "Quiver",
    "ReductionSystem",
    "SimpleSequence",
    "Subspace",
    "UnisvarError",
    "build_reduction_system",
    "classify_route",
    "count_uniserial_subspaces",
    "detours",
    "enumerate_points",
    "evaluate_point",
    "fibres",
    "hom_space",
    "is_isomorphic",
    "is_submodule",
    "load_system",
    "masts",
    "module_from_point",
    "no_degeneration_certificate",
    "parse_quiver_file",
    "pluecker_coords",
    "point_from_module",
    "quotient_is_uniserial",
    "recover_point",
    "reduce_route_symbolic",
    "satisfies_relations",
    "socle_and_quotient",
    "special_basis",
    "submodule_closure",
    "submodule_from_point",
    "uniserial_quotient",
    "variety_equations",
]
