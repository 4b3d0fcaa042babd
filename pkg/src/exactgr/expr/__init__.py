from .atoms import Atom, Context, ContextError, coord_atom, jet_atom, param_atom
from .parser import ParseError, UndeclaredIdentifier, parse
from .poly import ExpressionSizeError, Poly, get_max_terms, set_max_terms
from .printer import expr_string, poly_string
from .rational import (
    DivisionByZeroExpr,
    EvalDenominatorZero,
    Expr,
    ExprError,
    ONE_EXPR,
    UnassignedAtomError,
    ZERO_EXPR,
    arith,
    differentiate,
    eval_numeric,
    is_zero,
)

__all__ = [
    "Atom",
    "Context",
    "ContextError",
    "DivisionByZeroExpr",
    "EvalDenominatorZero",
    "Expr",
    "ExprError",
    "ExpressionSizeError",
    "ONE_EXPR",
    "ParseError",
    "Poly",
    "UnassignedAtomError",
    "UndeclaredIdentifier",
    "ZERO_EXPR",
    "arith",
    "coord_atom",
    "differentiate",
    "eval_numeric",
    "expr_string",
    "get_max_terms",
    "is_zero",
    "jet_atom",
    "param_atom",
    "parse",
    "poly_string",
    "set_max_terms",
]
