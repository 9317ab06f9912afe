"""Exact noncommutative algebra for BRST charges of quadratic constraint algebras."""

__version__ = "0.1.0"

from .coeff import ParameterSet, Scalar, as_scalar, parameters
from .ncpoly import Alphabet, GeneratorInfo, Poly, Presentation, Relation, anticommutator, commutator
from .parsing import ParseError, UnknownSymbolError, parse_poly, parse_scalar
from .rewrite import RewriteRule, RewriteSystem, confluence_check, normal_form, overlaps, reduce
from .ybtensor import StructureData, TensorSquareOp, qla_axioms, twist_check, twist_consistency, ybe_check

__all__ = [
    "__version__",
    "ParameterSet",
    "Scalar",
    "as_scalar",
    "parameters",
    "Alphabet",
    "GeneratorInfo",
    "Poly",
    "Presentation",
    "Relation",
    "anticommutator",
    "commutator",
    "ParseError",
    "UnknownSymbolError",
    "parse_poly",
    "parse_scalar",
    "RewriteRule",
    "RewriteSystem",
    "confluence_check",
    "normal_form",
    "overlaps",
    "reduce",
    "StructureData",
    "TensorSquareOp",
    "qla_axioms",
    "twist_check",
    "twist_consistency",
    "ybe_check",
]
