import logging
from typing import Dict, Optional, Tuple, Union

import numpy as np

from expressions.base import Const, Expr, Z
from expressions.evaluation import evaluate_lenient, evaluate_scalar
from integrators.base import QuadratureConfig
from integrators.contour import batch_antiderivative, check_point, integrate_from_base
from mappings.base import (
    DEFAULT_SLACK,
    BoundReport,
    DiskGridSpec,
    DomainMembershipError,
    GridSpec,
    HarmonicMap,
    LewyViolationError,
    MappingError,
    build_report,
)
from mappings.hyperbolic import cayley_derivative

logger = logging.getLogger(__name__)

# Tolerance for comparing integrated positions against a closed form.
CLOSED_FORM_TOL = 1e-8


def identity_map() -> HarmonicMap:
    return HarmonicMap(h_prime=Const(1.0), g_prime=Const(0.0), name="identity")


def _derivatives(m: HarmonicMap, z: complex) -> Tuple[complex, complex]:
    z = check_point(z)
    return evaluate_scalar(m.h_prime, z), evaluate_scalar(m.g_prime, z)


def df_norm(m: HarmonicMap, z: complex) -> float:
    """|Df(z)| = |h'(z)| + |g'(z)|."""
    hp, gp = _derivatives(m, z)
    return abs(hp) + abs(gp)


def jacobian(m: HarmonicMap, z: complex) -> float:
    """J(z, f) = |h'(z)|^2 - |g'(z)|^2."""
    hp, gp = _derivatives(m, z)
    return abs(hp) ** 2 - abs(gp) ** 2


def dilatation(m: HarmonicMap, z: complex) -> complex:
    """Second complex dilatation g'(z)/h'(z).

    Raises:
        LewyViolationError: h'(z) = 0
    """
    hp, gp = _derivatives(m, z)
    if hp == 0:
        raise LewyViolationError(f"h' vanishes at {z}")
    return gp / hp


def wirtinger_derivatives(m: HarmonicMap, z: complex) -> Tuple[complex, complex]:
    """(f_z, f_zbar) = (h'(z), conj(g'(z)))."""
    hp, gp = _derivatives(m, z)
    return hp, gp.conjugate()


def _check_closed_form(m: HarmonicMap, z: np.ndarray, values: np.ndarray) -> None:
    if m.closed_form_re is None:
        return
    expected = evaluate_lenient(m.closed_form_re, z).real
    finite = np.isfinite(values) & np.isfinite(expected)
    gap = np.abs(values.real - expected)[finite]
    if gap.size and gap.max() > CLOSED_FORM_TOL:
        logger.warning(
            "Re f of map '%s' deviates from its closed form by %.3e", m.name, gap.max()
        )


def evaluate_map(m: HarmonicMap, z: complex, cfg: Optional[QuadratureConfig] = None) -> complex:
    """f(z) = b + int_a^z h' + conj(int_a^z g')."""
    z = check_point(z)
    if z == m.base_a:
        return m.base_b
    h = integrate_from_base(m.h_prime, m.base_a, z, cfg)
    g = integrate_from_base(m.g_prime, m.base_a, z, cfg)
    value = m.base_b + h + g.conjugate()
    _check_closed_form(m, np.array([z]), np.array([value]))
    return value


def map_values(
    m: HarmonicMap, points: np.ndarray, cfg: Optional[QuadratureConfig] = None
) -> Tuple[np.ndarray, Dict[int, str]]:
    """Batch version of :func:`evaluate_map`.

    Returns:
        The values (NaN where evaluation failed) and a mapping from point
        index to failure message
    """
    points = np.asarray(points, dtype=np.complex128).ravel()
    h = batch_antiderivative(m.h_prime, m.base_a, points, cfg)
    g = batch_antiderivative(m.g_prime, m.base_a, points, cfg)
    values = np.full(points.size, np.nan + 0j)
    failures: Dict[int, str] = {}
    for k, (hr, gr) in enumerate(zip(h, g)):
        if hr.ok and gr.ok:
            values[k] = m.base_b + hr.value + gr.value.conjugate()
        else:
            failures[k] = hr.failure or gr.failure or "quadrature did not converge"
    _check_closed_form(m, points, values)
    return values, failures


def heinz_lower_bound(a: complex, b: complex) -> float:
    """Im(b)/Im(a), the lower bound for |Df| when f(a) = b."""
    a, b = complex(a), complex(b)
    if not a.imag > 0 or not b.imag > 0:
        raise DomainMembershipError(
            f"Heinz bound needs Im a > 0 and Im b > 0, got a={a}, b={b}"
        )
    return b.imag / a.imag


def _first_order_on(m: HarmonicMap, points: np.ndarray) -> Tuple[np.ndarray, Dict[int, str]]:
    """|Df| on an array of half-plane points with per-point failure messages."""
    hp = evaluate_lenient(m.h_prime, points)
    gp = evaluate_lenient(m.g_prime, points)
    failures: Dict[int, str] = {}
    for k in np.flatnonzero(~(np.isfinite(hp) & np.isfinite(gp))):
        failures[int(k)] = "h' or g' could not be evaluated"
    jac = np.abs(hp) ** 2 - np.abs(gp) ** 2
    for k in np.flatnonzero(np.isfinite(jac) & (jac <= 0)):
        failures[int(k)] = f"not sense-preserving (J = {jac[k]:.3e})"
    return np.abs(hp) + np.abs(gp), failures


def verify_heinz(m: HarmonicMap, grid: GridSpec, slack: float = DEFAULT_SLACK) -> BoundReport:
    """Check |h'| + |g'| >= Im(b)/Im(a) on every grid point."""
    points = grid.points()
    values, failures = _first_order_on(m, points)
    report = build_report(points, values, heinz_lower_bound(m.base_a, m.base_b), slack, failures)
    logger.info(
        "Heinz check for '%s': min %.12g, bound %.12g, %d violation(s)",
        m.name, report.min_value, report.bound, len(report.violations),
    )
    return report


def verify_heinz_disk(
    m: HarmonicMap,
    grid: Optional[DiskGridSpec] = None,
    slack: float = DEFAULT_SLACK,
    cfg: Optional[QuadratureConfig] = None,
) -> BoundReport:
    """Check |DF| >= dist(F(0), boundary)/2 for F = f o a on a disk grid.

    ``m`` is a map of the half-plane; it is precomposed with the Cayley map a,
    so |DF(z)| = |Df(a(z))| |a'(z)| and F(0) = f(i).
    """
    grid = grid or DiskGridSpec()
    disk_points = grid.points()
    halfplane_points = 1j * (1 + disk_points) / (1 - disk_points)
    values, failures = _first_order_on(m, halfplane_points)
    values = values * np.abs(cayley_derivative(disk_points))

    centre = m.base_b if m.base_a == 1j else evaluate_map(m, 1j, cfg)
    if not centre.imag > 0:
        raise MappingError(f"F(0) = {centre} is not inside the upper half-plane")
    bound = 0.5 * centre.imag
    report = build_report(disk_points, values, bound, slack, failures)
    logger.info(
        "Disk Heinz check for '%s': min %.12g, bound %.12g", m.name, report.min_value, bound
    )
    return report


def halfplane_diffeomorphism(
    a: complex, b: complex, positive_part: Expr, name: str = ""
) -> HarmonicMap:
    """Harmonic self-map of the half-plane with f(a) = b.

    Such a map has Im f = c Im z with c = Im(b)/Im(a), and
    h' = (A + c)/2, g' = (A - c)/2 for a holomorphic A with Re A > 0.

    Args:
        a: base point
        b: its image
        positive_part: the function A; Re A must be positive on the half-plane
        name: label used in logs and reports

    Raises:
        MappingError: Re A(a) <= 0
    """
    c = heinz_lower_bound(a, b)
    if not evaluate_scalar(positive_part, a).real > 0:
        raise MappingError("Re A must be positive on the half-plane")
    return HarmonicMap(
        h_prime=(positive_part + c) / 2,
        g_prime=(positive_part - c) / 2,
        base_a=a,
        base_b=b,
        name=name,
    )


def affine_positive_part(alpha: float, beta: float) -> Expr:
    """A(z) = alpha - i beta z, with Re A = alpha + beta Im z > 0 for alpha > 0, beta >= 0."""
    if not alpha > 0 or beta < 0:
        raise MappingError("Need alpha > 0 and beta >= 0")
    return Const(alpha) - Const(1j * beta) * Z


def sense_preserving_at(m: HarmonicMap, z: Union[complex, np.ndarray]) -> np.ndarray:
    """Boolean mask of points where |h'| > |g'|."""
    points = np.asarray(z, dtype=np.complex128)
    return np.abs(evaluate_lenient(m.h_prime, points)) > np.abs(evaluate_lenient(m.g_prime, points))
