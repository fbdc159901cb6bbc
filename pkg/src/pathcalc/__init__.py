"""Exact path algebra on a finite vertex set.

Weighted face and co-face maps, their boundary/co-boundary sums, the maps they
induce on regular paths, and a verifier that checks the identities between
them along two independent routes.
"""
from .bases import FULL, REGULAR, is_regular, regular_basis, regular_dim, space_basis, space_dim
from .errors import BasisCapError, DomainError, FormatError, IndexRangeError, PathCalcError, VertexMismatchError
from .operators import (
    Boundary,
    Coboundary,
    Coface,
    Degeneracy,
    FacePartial,
    GradedOperator,
    OperatorMatrix,
    WeightedCoface,
    WeightedFace,
    anticommutator,
    compose,
    identity,
    materialize,
    oracle_matrix,
)
from .pathspace import Chain, VertexSet, Weighting, basis_size, characteristic, enumerate_basis, join, path_rank
from .regular import (
    Induced,
    RegularBoundary,
    RegularCoboundary,
    RegularCoface,
    RegularFace,
    induced,
    project_regular,
    reduced_diff,
    reduced_partial,
)
from .scalar import Scalar, format_scalar, parse_scalar
from .verifier import VerificationReport, find_counterexample, run_suite

__version__ = "0.1.0"

__all__ = [
    "FULL",
    "REGULAR",
    "Boundary",
    "BasisCapError",
    "Chain",
    "Coboundary",
    "Coface",
    "Degeneracy",
    "DomainError",
    "FacePartial",
    "FormatError",
    "GradedOperator",
    "IndexRangeError",
    "Induced",
    "OperatorMatrix",
    "PathCalcError",
    "RegularBoundary",
    "RegularCoboundary",
    "RegularCoface",
    "RegularFace",
    "Scalar",
    "VerificationReport",
    "VertexMismatchError",
    "VertexSet",
    "WeightedCoface",
    "WeightedFace",
    "Weighting",
    "anticommutator",
    "basis_size",
    "characteristic",
    "compose",
    "enumerate_basis",
    "find_counterexample",
    "format_scalar",
    "identity",
    "induced",
    "is_regular",
    "join",
    "materialize",
    "oracle_matrix",
    "parse_scalar",
    "path_rank",
    "project_regular",
    "reduced_diff",
    "reduced_partial",
    "regular_basis",
    "regular_dim",
    "run_suite",
    "space_basis",
    "space_dim",
]
