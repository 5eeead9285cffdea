"""Line integrals of holomorphic expressions inside the upper half-plane.

The half-plane is convex and every supported integrand is holomorphic there,
so antiderivatives are taken along the straight segment from the base point.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from expressions.base import DomainError, Expr
from integrators.base import (
    MIN_IMAG,
    BaseIntegrator,
    Path,
    PathError,
    QuadratureConfig,
    QuadratureError,
    QuadratureResult,
)
from integrators.kronrod import GaussKronrodIntegrator

logger = logging.getLogger(__name__)

DEFAULT_INTEGRATOR: BaseIntegrator = GaussKronrodIntegrator()


def check_point(z: complex) -> complex:
    """Reject points on, below, or too close to the real axis."""
    z = complex(z)
    if not np.isfinite(z) or not z.imag > MIN_IMAG:
        raise PathError(f"Point {z} is not inside the upper half-plane (Im z > {MIN_IMAG})")
    return z


def _unwrap(result: QuadratureResult, f: Expr, start: complex, end: complex) -> complex:
    if result.failure is not None:
        raise DomainError(f"Failed to integrate '{f.render()}': {result.failure}")
    if not result.converged:
        raise QuadratureError(
            f"Tolerance not reached integrating '{f.render()}' over [{start}, {end}]",
            result.value,
            result.error,
        )
    return result.value


def integrate_segment(
    f: Expr,
    start: complex,
    end: complex,
    cfg: Optional[QuadratureConfig] = None,
    integrator: BaseIntegrator = DEFAULT_INTEGRATOR,
) -> complex:
    """Integrate ``f`` along the straight segment from ``start`` to ``end``.

    Args:
        f: holomorphic integrand
        start: first endpoint (Im > 0)
        end: second endpoint (Im > 0)
        cfg: quadrature tolerances
        integrator: quadrature rule

    Returns:
        The integral estimate

    Raises:
        PathError: an endpoint is not inside the upper half-plane
        DomainError: ``f`` could not be evaluated on the segment
        QuadratureError: tolerance not reached within ``max_depth``
    """
    cfg = cfg or QuadratureConfig()
    start, end = check_point(start), check_point(end)
    (result,) = integrator.integrate_segments(f, [start], [end], cfg)
    return _unwrap(result, f, start, end)


def integrate_from_base(
    f: Expr,
    base: complex,
    z: complex,
    cfg: Optional[QuadratureConfig] = None,
) -> complex:
    """Antiderivative of ``f`` anchored at ``base``, evaluated at ``z``."""
    return integrate_segment(f, base, z, cfg)


def integrate_path(f: Expr, path: Path, cfg: Optional[QuadratureConfig] = None) -> complex:
    """Integrate ``f`` along a polyline, segment by segment."""
    cfg = cfg or QuadratureConfig()
    starts, ends = zip(*path.segments())
    results = DEFAULT_INTEGRATOR.integrate_segments(f, starts, ends, cfg)
    return sum(
        (_unwrap(result, f, a, b) for result, a, b in zip(results, starts, ends)),
        0j,
    )


def batch_antiderivative(
    f: Expr,
    base: complex,
    targets: Sequence[complex],
    cfg: Optional[QuadratureConfig] = None,
) -> List[QuadratureResult]:
    """Antiderivative anchored at ``base`` for many targets at once.

    Every target gets its own result; a target outside the half-plane or a
    failed evaluation is recorded in that entry's ``failure`` and never aborts
    the batch.
    """
    cfg = cfg or QuadratureConfig()
    base = check_point(base)
    targets = [complex(t) for t in np.asarray(targets, dtype=np.complex128).ravel()]
    if not targets:
        return []

    inside = [np.isfinite(t) and t.imag > MIN_IMAG for t in targets]
    valid = [t for t, ok in zip(targets, inside) if ok]
    computed = iter(
        DEFAULT_INTEGRATOR.integrate_segments(f, [base] * len(valid), valid, cfg)
    )

    results = []
    for target, ok in zip(targets, inside):
        if ok:
            results.append(next(computed))
        else:
            results.append(
                QuadratureResult(
                    value=complex(np.nan, np.nan),
                    error=float("inf"),
                    converged=False,
                    intervals=0,
                    failure=f"Point {target} is not inside the upper half-plane",
                )
            )

    failures = sum(1 for r in results if not r.ok)
    if failures:
        logger.warning(
            "Antiderivative of '%s' failed at %d of %d targets", f.render(), failures, len(results)
        )
    return results
