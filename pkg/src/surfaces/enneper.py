"""Minimal graphs from Weierstrass-Enneper data.

With phi_1 = p(1 + q^2), phi_2 = -i p(1 - q^2) and phi_3 = 2i p q, the surface
is (u, v, t) = (Re b + Re int phi_1, Im b + Re int phi_2, -Re int phi_3) with
all integrals taken from the base point. The parameters are isothermal:
ds^2 = lambda^2 |dz|^2 with lambda = |p| (1 + |q|^2).
"""

import logging
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from expressions.base import Const, Expr
from expressions.evaluation import differentiate, evaluate_lenient, evaluate_scalar
from integrators.base import MIN_IMAG, QuadratureConfig
from integrators.contour import batch_antiderivative, check_point
from mappings.base import (
    Domain,
    DomainMembershipError,
    GridSpec,
    HarmonicMap,
    LewyViolationError,
)
from mappings.hyperbolic import hyperbolic_density
from surfaces.base import (
    AdmissibilityError,
    IndeterminateCurvatureError,
    StencilError,
    SurfaceError,
    SurfaceSample,
    WEData,
)

logger = logging.getLogger(__name__)

# Relative size of g' below which the dilatation route is treated as 0/0.
INDETERMINATE_RATIO = 1e-14
FD_STEP_SCALE = 1e-4

PhiTriple = Tuple[complex, complex, complex]


def phi_exprs(we: WEData) -> Tuple[Expr, Expr, Expr]:
    p, q = we.p, we.q
    return (
        p * (1 + q**2),
        Const(-1j) * p * (1 - q**2),
        Const(2j) * p * q,
    )


def phi(we: WEData, z: complex) -> PhiTriple:
    """(p(1+q^2), -ip(1-q^2), 2ipq) at z."""
    p = evaluate_scalar(we.p, z)
    q = evaluate_scalar(we.q, z)
    return p * (1 + q * q), -1j * p * (1 - q * q), 2j * p * q


def conformality_residual(we: WEData, z: complex) -> float:
    """|phi_1^2 + phi_2^2 + phi_3^2|, zero up to rounding for any data."""
    return abs(sum(c * c for c in phi(we, z)))


def _admissibility_failure(p: complex, q: complex) -> Optional[str]:
    if p == 0:
        return "p vanishes (not sense-preserving)"
    if abs(q) >= 1:
        return f"|q| = {abs(q):.6g} is not below 1"
    return None


def check_admissible(we: WEData, z: complex) -> None:
    """Raise AdmissibilityError unless p(z) != 0 and |q(z)| < 1."""
    failure = _admissibility_failure(evaluate_scalar(we.p, z), evaluate_scalar(we.q, z))
    if failure is not None:
        raise AdmissibilityError(f"{failure} at {z}")


def associated_map(we: WEData) -> HarmonicMap:
    """Projection of the surface to the (u, v) plane: h' = p, g' = p q^2."""
    return HarmonicMap(
        h_prime=we.p,
        g_prime=we.p * we.q**2,
        base_a=we.base,
        base_b=we.base_value,
        name=we.name,
    )


def immerse_batch(
    we: WEData, points: np.ndarray, cfg: Optional[QuadratureConfig] = None
) -> Tuple[np.ndarray, Dict[int, str]]:
    """Immersion of many points; rows are (u, v, t), NaN where integration failed."""
    points = np.asarray(points, dtype=np.complex128).ravel()
    b = we.base_value
    positions = np.full((points.size, 3), np.nan)
    failures: Dict[int, str] = {}
    integrals = [batch_antiderivative(f, we.base, points, cfg) for f in phi_exprs(we)]
    for k, (r1, r2, r3) in enumerate(zip(*integrals)):
        if r1.ok and r2.ok and r3.ok:
            positions[k] = (b.real + r1.value.real, b.imag + r2.value.real, -r3.value.real)
        else:
            failed = next(r for r in (r1, r2, r3) if not r.ok)
            failures[k] = failed.failure or "quadrature did not converge"
    return positions, failures


def immerse(
    we: WEData, z: complex, cfg: Optional[QuadratureConfig] = None
) -> Tuple[float, float, float]:
    """Point (u, v, t) of the surface above the parameter z.

    Raises:
        PathError: z is not inside the upper half-plane
        SurfaceError: the contour integrals could not be computed
    """
    z = check_point(z)
    positions, failures = immerse_batch(we, np.array([z]), cfg)
    if failures:
        raise SurfaceError(f"Failed to immerse {z}: {failures[0]}")
    u, v, t = positions[0]
    return float(u), float(v), float(t)


def conformal_factor(we: WEData, z: complex) -> float:
    """lambda = |p| (1 + |q|^2)."""
    p = evaluate_scalar(we.p, z)
    q = evaluate_scalar(we.q, z)
    return abs(p) * (1 + abs(q) ** 2)


def gauss_curvature(we: WEData, z: complex) -> float:
    """K = -4 |q'|^2 / (|p|^2 (1 + |q|^2)^4).

    Raises:
        LewyViolationError: p(z) = 0
    """
    p = evaluate_scalar(we.p, z)
    if p == 0:
        raise LewyViolationError(f"p vanishes at {z}")
    q = evaluate_scalar(we.q, z)
    dq = evaluate_scalar(differentiate(we.q), z)
    return -4 * abs(dq) ** 2 / (abs(p) ** 2 * (1 + abs(q) ** 2) ** 4)


def gauss_curvature_dilatation(m: HarmonicMap, z: complex) -> float:
    """K = -|w'|^2 / (|h' g'| (1 + |w|)^4) with w = g'/h'.

    Raises:
        LewyViolationError: h'(z) = 0
        IndeterminateCurvatureError: g'(z) = 0, where the formula is 0/0
    """
    hp = evaluate_scalar(m.h_prime, z)
    gp = evaluate_scalar(m.g_prime, z)
    if hp == 0:
        raise LewyViolationError(f"h' vanishes at {z}")
    if abs(gp) <= INDETERMINATE_RATIO * abs(hp):
        raise IndeterminateCurvatureError(
            f"g' vanishes at {z}; use the Weierstrass-Enneper route instead"
        )
    omega = gp / hp
    d_omega = evaluate_scalar(differentiate(m.g_prime / m.h_prime), z)
    return -abs(d_omega) ** 2 / (abs(hp * gp) * (1 + abs(omega)) ** 4)


def gauss_curvature_values(we: WEData, points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`gauss_curvature`; NaN where p or q fail or p = 0."""
    points = np.asarray(points, dtype=np.complex128)
    p = evaluate_lenient(we.p, points)
    q = evaluate_lenient(we.q, points)
    dq = evaluate_lenient(differentiate(we.q), points)
    with np.errstate(divide="ignore", invalid="ignore"):
        curvature = -4 * np.abs(dq) ** 2 / (np.abs(p) ** 2 * (1 + np.abs(q) ** 2) ** 4)
    return np.where(np.isfinite(curvature), curvature, np.nan)


def _fd_step(z: complex, h: Optional[float]) -> float:
    return FD_STEP_SCALE * (1 + abs(z)) if h is None else h


def _log_lambda(we: WEData, points: np.ndarray) -> np.ndarray:
    p = evaluate_lenient(we.p, points)
    q = evaluate_lenient(we.q, points)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log(np.abs(p) * (1 + np.abs(q) ** 2))


def _fd_curvature(we: WEData, points: np.ndarray, steps: np.ndarray) -> np.ndarray:
    """-(five-point Laplacian of log lambda) / lambda^2, vectorized."""
    centre = _log_lambda(we, points)
    neighbours = sum(
        _log_lambda(we, points + offset)
        for offset in (steps, -steps, 1j * steps, -1j * steps)
    )
    laplacian = (neighbours - 4 * centre) / steps**2
    return -laplacian / np.exp(2 * centre)


def gauss_curvature_fd(we: WEData, z: complex, h: Optional[float] = None) -> float:
    """Curvature from -Laplacian(log lambda)/lambda^2 on a five-point stencil.

    Args:
        we: surface data
        z: parameter point
        h: stencil step, 1e-4 (1 + |z|) by default

    Raises:
        StencilError: the stencil reaches the real axis
        LewyViolationError: lambda could not be evaluated on the stencil
    """
    z = check_point(z)
    h = _fd_step(z, h)
    if z.imag - h <= MIN_IMAG:
        raise StencilError(f"Stencil of step {h} around {z} leaves the upper half-plane")
    value = _fd_curvature(we, np.array([z]), np.array([h]))[0]
    if not np.isfinite(value):
        raise LewyViolationError(f"lambda vanishes or is undefined near {z}")
    return float(value)


def curvature_bound(
    we: WEData, z: complex, domain: Union[Domain, str] = Domain.HALFPLANE
) -> float:
    """lambda_Omega(z)^2 / lambda(z)^2 for the hyperbolic density of ``domain``.

    Raises:
        DomainMembershipError: z is not in ``domain``
        LewyViolationError: lambda(z) = 0
    """
    density = hyperbolic_density(domain, z)
    lam = conformal_factor(we, z)
    if lam == 0:
        raise LewyViolationError(f"lambda vanishes at {z}")
    return density**2 / lam**2


def schober_bound(z: complex) -> float:
    """1/dist(z, R)^2, the sharp bound for |K| above z."""
    z = complex(z)
    if not z.imag > 0:
        raise DomainMembershipError(f"{z} is not inside the upper half-plane")
    return 1 / z.imag**2


def first_fundamental_form(
    we: WEData,
    z: complex,
    cfg: Optional[QuadratureConfig] = None,
    h: Optional[float] = None,
) -> Tuple[float, float, float]:
    """(E, F, G) from central differences of the immersion.

    Isothermal parameters give E = G = lambda^2 and F = 0.
    """
    z = check_point(z)
    h = _fd_step(z, h)
    if z.imag - h <= MIN_IMAG:
        raise StencilError(f"Stencil of step {h} around {z} leaves the upper half-plane")
    stencil = np.array([z + h, z - h, z + 1j * h, z - 1j * h])
    positions, failures = immerse_batch(we, stencil, cfg)
    if failures:
        raise StencilError(f"Failed to immerse the stencil around {z}: {failures}")
    dx = (positions[0] - positions[1]) / (2 * h)
    dy = (positions[2] - positions[3]) / (2 * h)
    return float(dx @ dx), float(dx @ dy), float(dy @ dy)


def sample_surface(
    we: WEData, grid: GridSpec, cfg: Optional[QuadratureConfig] = None
) -> List[SurfaceSample]:
    """Evaluate position, lambda, K (two routes) and bounds on every grid point.

    Samples come back in row-major grid order. Points where the immersion or
    lambda could not be computed carry an ``error`` message; so do points where
    p = 0 or |q| >= 1. The batch itself never raises for a single point.
    """
    points = grid.points()
    positions, failures = immerse_batch(we, points, cfg)

    p = evaluate_lenient(we.p, points)
    q = evaluate_lenient(we.q, points)
    dq = evaluate_lenient(differentiate(we.q), points)
    lam = np.abs(p) * (1 + np.abs(q) ** 2)
    curvature = gauss_curvature_values(we, points)
    with np.errstate(divide="ignore", invalid="ignore"):
        steps = FD_STEP_SCALE * (1 + np.abs(points))
        fd_ok = points.imag - steps > MIN_IMAG
        curvature_fd = np.where(fd_ok, _fd_curvature(we, points, steps), np.nan)
        y = points.imag
        bound = (1 / (2 * y)) ** 2 / lam**2
        sharp = 1 / y**2
        ratio = np.abs(curvature) * y**2

    for k in range(points.size):
        if k in failures:
            continue
        if not (np.isfinite(p[k]) and np.isfinite(q[k]) and np.isfinite(dq[k])):
            failures[k] = "p, q or q' could not be evaluated"
            continue
        failure = _admissibility_failure(complex(p[k]), complex(q[k]))
        if failure is not None:
            failures[k] = failure

    if failures:
        logger.warning(
            "Surface '%s': %d of %d samples failed", we.name, len(failures), points.size
        )
    logger.debug("Sampled %d points of surface '%s'", points.size, we.name)

    return [
        SurfaceSample(
            z=complex(points[k]),
            position=tuple(float(c) for c in positions[k]),
            conformal_factor=float(lam[k]),
            K=float(curvature[k]),
            K_fd=float(curvature_fd[k]),
            bound=float(bound[k]),
            sharp_bound=float(sharp[k]),
            ratio=float(ratio[k]),
            error=failures.get(k),
        )
        for k in range(points.size)
    ]
