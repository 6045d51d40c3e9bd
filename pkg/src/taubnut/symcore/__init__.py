"""Exact symbolic scalars: canonical arithmetic, calculus, evaluation, parsing."""

from .expr import (
    MAX_DERIVATIVE_ORDER,
    CanonicalizationMismatch,
    DerivativeOrderError,
    DivisionByZero,
    DomainError,
    Expr,
    InconsistentBinding,
    NotRepresentable,
    Symbol,
    SymcoreError,
    as_expr,
    const,
    coordinate,
    cos,
    diff,
    function,
    parameter,
    sin,
    sqrt,
    substitute,
)
from .numeric import eval_numeric, is_zero, precision, random_point, to_arb
from .parser import ParseError, eval_tree, parse, parse_tree, tree_to_expr

__all__ = [
    "MAX_DERIVATIVE_ORDER",
    "CanonicalizationMismatch",
    "DerivativeOrderError",
    "DivisionByZero",
    "DomainError",
    "Expr",
    "InconsistentBinding",
    "NotRepresentable",
    "ParseError",
    "Symbol",
    "SymcoreError",
    "as_expr",
    "const",
    "coordinate",
    "cos",
    "diff",
    "eval_numeric",
    "eval_tree",
    "function",
    "is_zero",
    "parameter",
    "parse",
    "parse_tree",
    "precision",
    "random_point",
    "sin",
    "sqrt",
    "substitute",
    "to_arb",
    "tree_to_expr",
]
