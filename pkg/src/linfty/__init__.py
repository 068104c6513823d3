"""Exact computations with L-infinity structures on small Z2-graded spaces."""

from .algebra import (
    ParameterList,
    RelationIdeal,
    Scalar,
    SuperPolynomial,
    ideal_equal,
    ideal_reduce,
    poly_mul,
    scalar_arith,
)
from .cochain import (
    Cochain,
    ElementaryMap,
    LinearAutomorphism,
    bracket,
    coboundary,
    inner_derivation,
    is_codifferential,
    lift_apply,
    transform,
)
from .classify import ClassLabel, classify
from .cohomology import cohomology_data
from .deform import miniversal, verify_miniversal
from .errors import LinftyError
from .superspace import GradedSpace, koszul_sign, unshuffles, weight_basis

__version__ = "0.1.0"

__all__ = [
    "ClassLabel",
    "Cochain",
    "ElementaryMap",
    "GradedSpace",
    "LinearAutomorphism",
    "LinftyError",
    "ParameterList",
    "RelationIdeal",
    "Scalar",
    "SuperPolynomial",
    "bracket",
    "classify",
    "coboundary",
    "cohomology_data",
    "ideal_equal",
    "ideal_reduce",
    "inner_derivation",
    "is_codifferential",
    "koszul_sign",
    "lift_apply",
    "miniversal",
    "poly_mul",
    "scalar_arith",
    "transform",
    "unshuffles",
    "verify_miniversal",
    "weight_basis",
]
