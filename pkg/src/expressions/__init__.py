"""Holomorphic expressions of one complex variable: parse, evaluate, differentiate."""

from expressions.base import (
    Add,
    Const,
    Div,
    DomainError,
    EvaluationError,
    Exp,
    Expr,
    ExpressionError,
    ExpressionSyntaxError,
    I,
    Log,
    Mul,
    Neg,
    NonFiniteError,
    Pow,
    Sqrt,
    Sub,
    UnknownIdentifierError,
    Var,
    Z,
)
from expressions.evaluation import (
    constant_fold,
    differentiate,
    evaluate,
    evaluate_lenient,
    evaluate_scalar,
    substitute,
    to_source,
)
from expressions.parser import parse

__all__ = [
    "Add",
    "Const",
    "Div",
    "DomainError",
    "EvaluationError",
    "Exp",
    "Expr",
    "ExpressionError",
    "ExpressionSyntaxError",
    "I",
    "Log",
    "Mul",
    "Neg",
    "NonFiniteError",
    "Pow",
    "Sqrt",
    "Sub",
    "UnknownIdentifierError",
    "Var",
    "Z",
    "constant_fold",
    "differentiate",
    "evaluate",
    "evaluate_lenient",
    "evaluate_scalar",
    "parse",
    "substitute",
    "to_source",
]
