"""Exact binomial determinants, their closed forms, and left nullspaces of
binomial matrices."""
from .binomial import binom, pi, q_quotient, submatrix
from .formulas import EvalReport, Method, det, size_reduction_expand
from .indexsets import IndexSet, IntervalSpec, leq, make_indexset, parse_indexset, reflect, shift_down
from .interchange import interchange, pi_product_identity_check
from .nullspace import NullVector, nullspace_cramer, nullspace_lambda
from .oracle import det_bareiss, det_cofactor, rank

__all__ = [
    "EvalReport",
    "IndexSet",
    "IntervalSpec",
    "Method",
    "NullVector",
    "binom",
    "det",
    "det_bareiss",
    "det_cofactor",
    "interchange",
    "leq",
    "make_indexset",
    "nullspace_cramer",
    "nullspace_lambda",
    "parse_indexset",
    "pi",
    "pi_product_identity_check",
    "q_quotient",
    "rank",
    "reflect",
    "shift_down",
    "size_reduction_expand",
    "submatrix",
]
