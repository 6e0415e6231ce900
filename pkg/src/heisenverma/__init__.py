"""Exact singular vectors in sl(n+2) generalized Verma modules.

The package realizes sl(n+2, C) as differential operators on the Weyl algebra
of its Heisenberg opposite nilradical, classifies the singular vectors of the
scalar generalized Verma modules under the subalgebras sl(n-r+2, C), and
certifies the classification against an independent brute-force rational
kernel computation.
"""

from .coeff import ParamScalar, Rational, rat
from .lie import Character, LieBasisElement, LieElement, bracket, embed_sub
from .weyl import PolyVector, VarSet, WeylElement, dual, hatted
from .realize import Realization, realization_for, reduce_mod_Ie, poly_to_pbw, pbw_to_poly
from .verma import PbwVector, is_singular, crosscheck_phi
from .fischer import HarmonicSpace, QOperator, TOperator, harmonic_basis, fischer_project
from .branching import (
    ComponentDescriptor,
    SingularVector,
    brute_force_solve,
    build_R,
    enumerate_components,
    factorization_check,
    highest_weight_filter,
    multiplicity,
    recurrence_check,
    verify_slices,
)

__version__ = "0.1.0"

__all__ = [
    "Character",
    "ComponentDescriptor",
    "HarmonicSpace",
    "LieBasisElement",
    "LieElement",
    "ParamScalar",
    "PbwVector",
    "PolyVector",
    "QOperator",
    "Rational",
    "Realization",
    "SingularVector",
    "TOperator",
    "VarSet",
    "WeylElement",
    "bracket",
    "brute_force_solve",
    "build_R",
    "crosscheck_phi",
    "dual",
    "embed_sub",
    "enumerate_components",
    "factorization_check",
    "fischer_project",
    "harmonic_basis",
    "hatted",
    "highest_weight_filter",
    "is_singular",
    "multiplicity",
    "pbw_to_poly",
    "poly_to_pbw",
    "rat",
    "realization_for",
    "recurrence_check",
    "reduce_mod_Ie",
    "verify_slices",
]
