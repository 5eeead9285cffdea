"""Immutable expression trees for holomorphic functions of one variable z."""

import cmath
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, ClassVar, Optional, Union

import numpy as np

Number = Union[int, float, complex]


class ExpressionError(ValueError):
    """Base class for expression errors."""


class ExpressionSyntaxError(ExpressionError):
    """Source text is not in the expression grammar."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class UnknownIdentifierError(ExpressionSyntaxError):
    """An identifier other than z, i, pi, log, exp or sqrt was used."""

    def __init__(self, name: str, offset: int):
        super().__init__(f"Unknown identifier '{name}'", offset)
        self.name = name


class EvaluationError(ExpressionError):
    """An expression could not be evaluated at the requested point."""


class DomainError(EvaluationError):
    """A branch cut or a pole was hit during evaluation."""


class NonFiniteError(EvaluationError):
    """Evaluation produced, or was given, a NaN or infinite value."""


# Printing precedence, loosest first.
PREC_SUM = 1
PREC_PRODUCT = 2
PREC_NEGATION = 3
PREC_POWER = 4
PREC_ATOM = 5


def _coerce(value: Union["Expr", Number]) -> "Expr":
    if isinstance(value, Expr):
        return value
    return Const(complex(value))


class Expr(ABC):
    """Base class for all expression nodes.

    Nodes are frozen dataclasses, so trees compare structurally, hash, and
    can be shared freely between threads.
    """

    precedence: ClassVar[int] = PREC_ATOM

    @abstractmethod
    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        """Evaluate the node on an array of points.

        Args:
            z: complex128 array of evaluation points
            strict: raise DomainError on a branch-cut hit or a zero division;
                when False the offending entries become NaN instead

        Returns:
            complex128 array shaped like ``z``
        """

    @abstractmethod
    def derivative(self) -> "Expr":
        """Unsimplified symbolic derivative with respect to z."""

    @abstractmethod
    def fold(self) -> "Expr":
        """Collapse constant subtrees and trivial identities."""

    @abstractmethod
    def substitute(self, inner: "Expr") -> "Expr":
        """Replace every occurrence of z by ``inner``."""

    @abstractmethod
    def render(self) -> str:
        """Source text in the parser's grammar."""

    def __str__(self) -> str:
        return self.render()

    def _wrap(self, child: "Expr", strictly_tighter: bool = False) -> str:
        text = child.render()
        if child.precedence < self.precedence or (
            strictly_tighter and child.precedence == self.precedence
        ):
            return f"({text})"
        return text

    def __add__(self, other: Union["Expr", Number]) -> "Expr":
        return Add(self, _coerce(other))

    def __radd__(self, other: Number) -> "Expr":
        return Add(_coerce(other), self)

    def __sub__(self, other: Union["Expr", Number]) -> "Expr":
        return Sub(self, _coerce(other))

    def __rsub__(self, other: Number) -> "Expr":
        return Sub(_coerce(other), self)

    def __mul__(self, other: Union["Expr", Number]) -> "Expr":
        return Mul(self, _coerce(other))

    def __rmul__(self, other: Number) -> "Expr":
        return Mul(_coerce(other), self)

    def __truediv__(self, other: Union["Expr", Number]) -> "Expr":
        return Div(self, _coerce(other))

    def __rtruediv__(self, other: Number) -> "Expr":
        return Div(_coerce(other), self)

    def __neg__(self) -> "Expr":
        return Neg(self)

    def __pow__(self, exponent: int) -> "Expr":
        return Pow(self, exponent)


def _format_real(x: float) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class Var(Expr):
    """The variable z."""

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        return z

    def derivative(self) -> Expr:
        return Const(1.0)

    def fold(self) -> Expr:
        return self

    def substitute(self, inner: Expr) -> Expr:
        return inner

    def render(self) -> str:
        return "z"


@dataclass(frozen=True)
class Const(Expr):
    """A finite complex constant."""

    value: complex

    def __post_init__(self):
        value = complex(self.value)
        if not cmath.isfinite(value):
            raise NonFiniteError(f"Constant {value!r} is not finite")
        object.__setattr__(self, "value", value)

    @property
    def precedence(self) -> int:  # type: ignore[override]
        value = self.value
        if value == 1j or (value.imag == 0 and value.real >= 0):
            return PREC_ATOM
        return PREC_SUM

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        return np.full(np.shape(z), self.value, dtype=np.complex128)

    def derivative(self) -> Expr:
        return Const(0.0)

    def fold(self) -> Expr:
        return self

    def substitute(self, inner: Expr) -> Expr:
        return self

    def render(self) -> str:
        re, im = self.value.real, self.value.imag
        if im == 0:
            return _format_real(re)
        if self.value == 1j:
            return "i"
        imag_text = f"{_format_real(abs(im))}*i"
        if re == 0:
            return f"-{imag_text}" if im < 0 else imag_text
        sign = "-" if im < 0 else "+"
        return f"{_format_real(re)} {sign} {imag_text}"


def _const(node: Expr) -> Union[complex, None]:
    return node.value if isinstance(node, Const) else None


def _folded(compute: Callable[[], complex]) -> Optional[Const]:
    """Const of a scalar computation, or None when it overflows or is not finite."""
    try:
        result = complex(compute())
    except (OverflowError, ZeroDivisionError):
        return None
    return Const(result) if cmath.isfinite(result) else None


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    precedence: ClassVar[int] = PREC_NEGATION

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        return -self.operand.values(z, strict)

    def derivative(self) -> Expr:
        return Neg(self.operand.derivative())

    def fold(self) -> Expr:
        operand = self.operand.fold()
        if isinstance(operand, Const):
            return Const(-operand.value)
        if isinstance(operand, Neg):
            return operand.operand
        return Neg(operand)

    def substitute(self, inner: Expr) -> Expr:
        return Neg(self.operand.substitute(inner))

    def render(self) -> str:
        return f"-{self._wrap(self.operand)}"


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr
    precedence: ClassVar[int] = PREC_SUM

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        return self.left.values(z, strict) + self.right.values(z, strict)

    def derivative(self) -> Expr:
        return Add(self.left.derivative(), self.right.derivative())

    def fold(self) -> Expr:
        left, right = self.left.fold(), self.right.fold()
        a, b = _const(left), _const(right)
        if a is not None and b is not None:
            return _folded(lambda: a + b) or Add(left, right)
        if a == 0:
            return right
        if b == 0:
            return left
        return Add(left, right)

    def substitute(self, inner: Expr) -> Expr:
        return Add(self.left.substitute(inner), self.right.substitute(inner))

    def render(self) -> str:
        return f"{self._wrap(self.left)} + {self._wrap(self.right, True)}"


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr
    precedence: ClassVar[int] = PREC_SUM

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        return self.left.values(z, strict) - self.right.values(z, strict)

    def derivative(self) -> Expr:
        return Sub(self.left.derivative(), self.right.derivative())

    def fold(self) -> Expr:
        left, right = self.left.fold(), self.right.fold()
        a, b = _const(left), _const(right)
        if a is not None and b is not None:
            return _folded(lambda: a - b) or Sub(left, right)
        if b == 0:
            return left
        if a == 0:
            return Neg(right).fold()
        return Sub(left, right)

    def substitute(self, inner: Expr) -> Expr:
        return Sub(self.left.substitute(inner), self.right.substitute(inner))

    def render(self) -> str:
        return f"{self._wrap(self.left)} - {self._wrap(self.right, True)}"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr
    precedence: ClassVar[int] = PREC_PRODUCT

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        return self.left.values(z, strict) * self.right.values(z, strict)

    def derivative(self) -> Expr:
        return Add(
            Mul(self.left.derivative(), self.right),
            Mul(self.left, self.right.derivative()),
        )

    def fold(self) -> Expr:
        left, right = self.left.fold(), self.right.fold()
        a, b = _const(left), _const(right)
        if a is not None and b is not None:
            return _folded(lambda: a * b) or Mul(left, right)
        # constants go to the left so that chains of them meet
        if b is not None:
            left, right, a, b = right, left, b, None
        if a is not None:
            if a == 0:
                return Const(0.0)
            if a == 1:
                return right
            if a == -1:
                return Neg(right).fold()
            if isinstance(right, Mul) and isinstance(right.left, Const):
                c = right.left.value
                merged = _folded(lambda: a * c)
                if merged is not None:
                    return Mul(merged, right.right).fold()
            if isinstance(right, Neg):
                return Mul(Const(-a), right.operand).fold()
        return Mul(left, right)

    def substitute(self, inner: Expr) -> Expr:
        return Mul(self.left.substitute(inner), self.right.substitute(inner))

    def render(self) -> str:
        return f"{self._wrap(self.left)}*{self._wrap(self.right, True)}"


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr
    precedence: ClassVar[int] = PREC_PRODUCT

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        numerator = self.left.values(z, strict)
        denominator = self.right.values(z, strict)
        poles = denominator == 0
        if np.any(poles):
            if strict:
                raise DomainError(
                    f"Division by zero in '{self.render()}' at {np.count_nonzero(poles)} point(s)"
                )
            denominator = np.where(poles, np.nan, denominator)
        return numerator / denominator

    def derivative(self) -> Expr:
        return Div(
            Sub(
                Mul(self.left.derivative(), self.right),
                Mul(self.left, self.right.derivative()),
            ),
            Pow(self.right, 2),
        )

    def fold(self) -> Expr:
        left, right = self.left.fold(), self.right.fold()
        a, b = _const(left), _const(right)
        if b is not None and b != 0:
            if a is not None:
                return _folded(lambda: a / b) or Div(left, right)
            if b == 1:
                return left
            reciprocal = _folded(lambda: 1 / b)
            if reciprocal is not None:
                return Mul(reciprocal, left).fold()
        if a == 0 and b is None:
            return Const(0.0)
        return Div(left, right)

    def substitute(self, inner: Expr) -> Expr:
        return Div(self.left.substitute(inner), self.right.substitute(inner))

    def render(self) -> str:
        return f"{self._wrap(self.left)}/{self._wrap(self.right, True)}"


@dataclass(frozen=True)
class Pow(Expr):
    """Integer power; complex powers are written as exp(c*log(u))."""

    base: Expr
    exponent: int
    precedence: ClassVar[int] = PREC_POWER

    def __post_init__(self):
        if isinstance(self.exponent, bool) or int(self.exponent) != self.exponent:
            raise ExpressionError(f"Exponent must be an integer, got {self.exponent!r}")
        object.__setattr__(self, "exponent", int(self.exponent))

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        base = self.base.values(z, strict)
        if self.exponent < 0:
            poles = base == 0
            if np.any(poles):
                if strict:
                    raise DomainError(
                        f"Negative power of zero in '{self.render()}'"
                    )
                base = np.where(poles, np.nan, base)
        return base ** self.exponent

    def derivative(self) -> Expr:
        if self.exponent == 0:
            return Const(0.0)
        return Mul(
            Mul(Const(float(self.exponent)), Pow(self.base, self.exponent - 1)),
            self.base.derivative(),
        )

    def fold(self) -> Expr:
        base = self.base.fold()
        if self.exponent == 0:
            return Const(1.0)
        if self.exponent == 1:
            return base
        value = _const(base)
        if value is not None and (value != 0 or self.exponent > 0):
            folded = _folded(lambda: value**self.exponent)
            if folded is not None:
                return folded
        return Pow(base, self.exponent)

    def substitute(self, inner: Expr) -> Expr:
        return Pow(self.base.substitute(inner), self.exponent)

    def render(self) -> str:
        base = self.base.render()
        if self.base.precedence < PREC_ATOM:
            base = f"({base})"
        if self.exponent < 0:
            return f"{base}^({self.exponent})"
        return f"{base}^{self.exponent}"


class _Function(Expr):
    """Elementary function applied to a single argument."""

    name: ClassVar[str]
    argument: Expr

    def render(self) -> str:
        return f"{self.name}({self.argument.render()})"

    def fold(self) -> Expr:
        argument = self.argument.fold()
        value = _const(argument)
        if value is not None and not self._on_cut(value):
            result = self._scalar(value)
            if cmath.isfinite(result):
                return Const(result)
        return type(self)(argument)

    def substitute(self, inner: Expr) -> Expr:
        return type(self)(self.argument.substitute(inner))

    def _on_cut(self, value: complex) -> bool:
        return False

    @abstractmethod
    def _scalar(self, value: complex) -> complex:
        """Scalar version used for constant folding."""


def _cut_mask(values: np.ndarray, include_zero: bool) -> np.ndarray:
    on_axis = values.imag == 0
    if include_zero:
        return on_axis & (values.real <= 0)
    return on_axis & (values.real < 0)


@dataclass(frozen=True)
class Log(_Function):
    """Principal logarithm, cut along the non-positive reals."""

    argument: Expr
    name: ClassVar[str] = "log"

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        argument = self.argument.values(z, strict)
        cut = _cut_mask(argument, include_zero=True)
        if np.any(cut):
            if strict:
                raise DomainError(f"log branch cut hit in '{self.render()}'")
            argument = np.where(cut, np.nan, argument)
        return np.log(argument)

    def derivative(self) -> Expr:
        return Div(self.argument.derivative(), self.argument)

    def _on_cut(self, value: complex) -> bool:
        return value.imag == 0 and value.real <= 0

    def _scalar(self, value: complex) -> complex:
        return cmath.log(value)


@dataclass(frozen=True)
class Exp(_Function):
    argument: Expr
    name: ClassVar[str] = "exp"

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        return np.exp(self.argument.values(z, strict))

    def derivative(self) -> Expr:
        return Mul(Exp(self.argument), self.argument.derivative())

    def _scalar(self, value: complex) -> complex:
        if value.real > 700:
            return complex(math.inf)
        return cmath.exp(value)


@dataclass(frozen=True)
class Sqrt(_Function):
    """Principal square root, cut along the negative reals."""

    argument: Expr
    name: ClassVar[str] = "sqrt"

    def values(self, z: np.ndarray, strict: bool = True) -> np.ndarray:
        argument = self.argument.values(z, strict)
        cut = _cut_mask(argument, include_zero=False)
        if np.any(cut):
            if strict:
                raise DomainError(f"sqrt branch cut hit in '{self.render()}'")
            argument = np.where(cut, np.nan, argument)
        return np.sqrt(argument)

    def derivative(self) -> Expr:
        return Div(self.argument.derivative(), Mul(Const(2.0), Sqrt(self.argument)))

    def _on_cut(self, value: complex) -> bool:
        return value.imag == 0 and value.real < 0

    def _scalar(self, value: complex) -> complex:
        return cmath.sqrt(value)


Z = Var()
I = Const(1j)
