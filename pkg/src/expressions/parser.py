"""Parser for the expression grammar in ``grammar.lark``."""

import math
from pathlib import Path

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from expressions.base import (
    Add,
    Const,
    Div,
    Exp,
    Expr,
    ExpressionError,
    ExpressionSyntaxError,
    Log,
    Mul,
    Neg,
    Pow,
    Sqrt,
    Sub,
    UnknownIdentifierError,
    Var,
)

_GRAMMAR_PATH = Path(__file__).with_name("grammar.lark")
_GRAMMAR_SRC = _GRAMMAR_PATH.read_text()

_PARSER = Lark(_GRAMMAR_SRC, parser="lalr", start="start")

CONSTANTS = {
    "i": Const(1j),
    "pi": Const(math.pi),
}

FUNCTIONS = {
    "log": Log,
    "exp": Exp,
    "sqrt": Sqrt,
}


def _byte_offset(text: str, position: int) -> int:
    return len(text[:position].encode("utf-8"))


@v_args(inline=True)
class _ExprBuilder(Transformer):
    """Turn the parse tree into ``Expr`` nodes, resolving identifiers."""

    def __init__(self, text: str):
        super().__init__()
        self._text = text

    def _offset(self, token: Token) -> int:
        return _byte_offset(self._text, token.start_pos or 0)

    def number(self, token: Token) -> Expr:
        return Const(float(token))

    def name(self, token: Token) -> Expr:
        identifier = str(token)
        if identifier == "z":
            return Var()
        if identifier in CONSTANTS:
            return CONSTANTS[identifier]
        if identifier in FUNCTIONS:
            raise ExpressionSyntaxError(
                f"Function '{identifier}' needs a parenthesized argument",
                self._offset(token),
            )
        raise UnknownIdentifierError(identifier, self._offset(token))

    def call(self, token: Token, argument: Expr) -> Expr:
        identifier = str(token)
        if identifier in FUNCTIONS:
            return FUNCTIONS[identifier](argument)
        if identifier == "z" or identifier in CONSTANTS:
            raise ExpressionSyntaxError(
                f"'{identifier}' is not a function", self._offset(token)
            )
        raise UnknownIdentifierError(identifier, self._offset(token))

    def _integer(self, token: Token) -> int:
        if not str(token).isdigit():
            raise ExpressionSyntaxError(
                f"Exponent must be an integer, got '{token}'", self._offset(token)
            )
        return int(str(token))

    def positive_exponent(self, token: Token) -> int:
        return self._integer(token)

    def negative_exponent(self, token: Token) -> int:
        return -self._integer(token)

    def pow(self, base: Expr, exponent: int) -> Expr:
        return Pow(base, exponent)

    def neg(self, operand: Expr) -> Expr:
        return Neg(operand)

    def add(self, left: Expr, right: Expr) -> Expr:
        return Add(left, right)

    def sub(self, left: Expr, right: Expr) -> Expr:
        return Sub(left, right)

    def mul(self, left: Expr, right: Expr) -> Expr:
        return Mul(left, right)

    def div(self, left: Expr, right: Expr) -> Expr:
        return Div(left, right)


def parse(text: str) -> Expr:
    """Parse source text into an expression tree.

    Args:
        text: expression source, e.g. ``"(z^2 - 1)/(2*i*z)"``

    Returns:
        The expression tree

    Raises:
        ExpressionSyntaxError: the text is not in the grammar; ``offset`` is
            the byte offset of the offending input
        UnknownIdentifierError: an identifier other than z, i, pi, log, exp
            or sqrt was used
    """
    try:
        tree = _PARSER.parse(text)
    except UnexpectedEOF:
        raise ExpressionSyntaxError(
            "Unexpected end of expression", _byte_offset(text, len(text))
        ) from None
    except UnexpectedInput as e:
        position = e.pos_in_stream
        if position is None or position < 0:
            position = len(text)
        raise ExpressionSyntaxError(
            f"Unexpected input {text[position:position + 10]!r}",
            _byte_offset(text, position),
        ) from None

    try:
        result = _ExprBuilder(text).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ExpressionError):
            raise e.orig_exc from None
        raise
    if not isinstance(result, Expr):
        raise ExpressionSyntaxError("Empty expression", 0)
    return result
