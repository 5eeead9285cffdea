"""Evaluation and calculus entry points for expression trees."""

from typing import Union

import numpy as np

from expressions.base import EvaluationError, Expr, NonFiniteError


ArrayLike = Union[complex, float, np.ndarray]


def _as_points(z: ArrayLike) -> np.ndarray:
    points = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(points)):
        raise NonFiniteError("Evaluation point is not finite")
    return points


def evaluate(e: Expr, z: ArrayLike) -> Union[complex, np.ndarray]:
    """Evaluate an expression at a point or an array of points.

    Args:
        e: expression to evaluate
        z: a complex scalar or an array of complex points

    Returns:
        A complex number for scalar input, otherwise a complex128 array

    Raises:
        DomainError: a branch cut or a pole was hit
        NonFiniteError: the input or the result is NaN or infinite
    """
    points = _as_points(z)
    with np.errstate(all="ignore"):
        result = e.values(points, strict=True)
    if not np.all(np.isfinite(result)):
        raise NonFiniteError(f"'{e.render()}' is not finite at the requested point(s)")
    if result.ndim == 0:
        return complex(result)
    return result


def evaluate_lenient(e: Expr, z: ArrayLike) -> np.ndarray:
    """Evaluate on an array, marking failed points with NaN instead of raising.

    Batch operations use this so that one bad grid point does not abort the
    whole batch; callers test the result with ``np.isfinite``.
    """
    points = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        result = e.values(points, strict=False)
    return np.where(np.isfinite(result), result, np.nan + 0j)


def evaluate_scalar(e: Expr, z: complex) -> complex:
    """Scalar-only variant of :func:`evaluate` with a stricter return type."""
    value = evaluate(e, complex(z))
    if not isinstance(value, complex):
        raise EvaluationError("Expected a scalar evaluation point")
    return value


def differentiate(e: Expr) -> Expr:
    """Exact symbolic derivative d e / d z, with constants folded."""
    return e.derivative().fold()


def constant_fold(e: Expr) -> Expr:
    """Collapse constant subtrees; the result evaluates equal to ``e``."""
    return e.fold()


def substitute(e: Expr, inner: Expr) -> Expr:
    """Composition e(inner(z))."""
    return e.substitute(inner)


def to_source(e: Expr) -> str:
    """Print an expression in the grammar accepted by ``parse``."""
    return e.render()
