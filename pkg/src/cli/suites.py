"""Verification suites run by ``minigraph verify``.

Each suite evaluates a family of bounds or identities and reports one check
per quantity with the observed value and the tolerance it was held to.
"""

import logging
import math
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from cli.config import MAX_FAILED_FRACTION, JobConfig, Suite
from expressions.base import ExpressionError
from mappings.base import DEFAULT_SLACK, HarmonicMap, MappingError
from mappings.harmonic import (
    affine_positive_part,
    df_norm,
    halfplane_diffeomorphism,
    map_values,
    verify_heinz,
    verify_heinz_disk,
)
from mappings.hyperbolic import (
    cayley_disk_to_halfplane,
    cayley_halfplane_to_disk,
    disk_valued_corpus,
    halfplane_to_disk_expr,
    schwarz_pick_residual,
)
from surfaces.base import IndeterminateCurvatureError, SurfaceError, WEData
from surfaces.enneper import (
    associated_map,
    conformal_factor,
    conformality_residual,
    first_fundamental_form,
    gauss_curvature,
    gauss_curvature_dilatation,
    gauss_curvature_fd,
    gauss_curvature_values,
    immerse_batch,
    phi,
    schober_bound,
)
from surfaces.extremal import (
    extremal_closed_form,
    extremal_halfplane_example,
    random_admissible_instances,
)

logger = logging.getLogger(__name__)


class Check(BaseModel):
    name: str
    observed: float
    tolerance: float
    passed: bool


class VerificationReport(BaseModel):
    suite: str
    checks: List[Check] = []

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "checks": [
                {
                    "name": c.name,
                    "observed": c.observed,
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "pass": self.passed,
        }


def _at_most(name: str, observed: float, tolerance: float) -> Check:
    return Check(
        name=name,
        observed=observed,
        tolerance=tolerance,
        passed=bool(math.isfinite(observed) and observed <= tolerance),
    )


def _at_least(name: str, observed: float, tolerance: float) -> Check:
    """observed >= -tolerance."""
    return Check(
        name=name,
        observed=observed,
        tolerance=tolerance,
        passed=bool(math.isfinite(observed) and observed >= -tolerance),
    )


def _random_points(
    rng: np.random.Generator, n: int, re: Tuple[float, float], im: Tuple[float, float]
) -> np.ndarray:
    return rng.uniform(*re, size=n) + 1j * rng.uniform(*im, size=n)


def _grid_box(job: JobConfig) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    g = job.grid
    return (g.re_min, g.re_max), (g.im_min, g.im_max)


def _selected_map(job: JobConfig) -> HarmonicMap:
    if job.uses_extremal:
        return extremal_halfplane_example().map
    return associated_map(job.surface_data())


def heinz_suite(job: JobConfig) -> VerificationReport:
    """|Df| >= Im(b)/Im(a) for the selected map and random half-plane self-maps."""
    slack = job.tol or DEFAULT_SLACK
    report = verify_heinz(_selected_map(job), job.grid, slack)
    checks = [
        _at_least("min |Df| - Im(b)/Im(a)", report.min_value - report.bound, slack),
        _at_most(
            "failed sample fraction", len(report.failures) / job.grid.size, MAX_FAILED_FRACTION
        ),
    ]

    rng = np.random.default_rng(job.seed)
    margins = []
    for k in range(10):
        a = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3))
        b = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3))
        part = affine_positive_part(rng.uniform(0.1, 2), rng.uniform(0, 2))
        m = halfplane_diffeomorphism(a, b, part, name=f"random-{k}")
        r = verify_heinz(m, job.grid, slack)
        margins.append(r.min_value - r.bound if not r.failures else -math.inf)
    checks.append(_at_least("random normalizations: min |Df| - Im(b)/Im(a)", min(margins), slack))
    return VerificationReport(suite=Suite.HEINZ.value, checks=checks)


def heinz_disk_suite(job: JobConfig) -> VerificationReport:
    """|DF| >= dist(F(0), R)/2 for F = f o a on a disk grid, plus the Cayley round trip."""
    slack = job.tol or DEFAULT_SLACK
    report = verify_heinz_disk(_selected_map(job), job.disk_grid, slack, job.quadrature)
    checks = [
        _at_least("min |DF| - dist(F(0), R)/2", report.min_value - report.bound, slack),
        _at_most(
            "failed sample fraction",
            len(report.failures) / (report.samples + len(report.failures)),
            MAX_FAILED_FRACTION,
        ),
    ]

    rng = np.random.default_rng(job.seed)
    worst = 0.0
    for w in _random_points(rng, 1000, (-5, 5), (0.01, 5)):
        back = cayley_disk_to_halfplane(cayley_halfplane_to_disk(w))
        worst = max(worst, abs(back - w) / abs(w))
    checks.append(_at_most("Cayley round trip relative error", worst, 1e-13))
    return VerificationReport(suite=Suite.HEINZ_DISK.value, checks=checks)


def _min_residual(q, points: np.ndarray) -> float:
    try:
        return min(schwarz_pick_residual(q, z) for z in points)
    except (MappingError, ExpressionError) as e:
        logger.warning("Schwarz-Pick residual undefined: %s", e)
        return -math.inf


def schwarz_pick_suite(job: JobConfig) -> VerificationReport:
    """lambda (1 - |q|^2) - |q'| >= 0 for analytic maps into the disk."""
    tol = job.tol or 1e-12
    rng = np.random.default_rng(job.seed)
    points = _random_points(rng, 50, (-3, 3), (0.05, 3))

    corpus = disk_valued_corpus(20, job.seed)
    checks = [
        _at_least(
            "corpus min residual", min(_min_residual(q, points) for q in corpus), tol
        )
    ]
    conformal = halfplane_to_disk_expr()
    equality = max(abs(schwarz_pick_residual(conformal, z)) for z in points)
    checks.append(_at_most("conformal equality |residual|", equality, 1e-10))
    if not job.uses_extremal:
        checks.append(
            _at_least("given q min residual", _min_residual(job.surface_data().q, points), tol)
        )
    return VerificationReport(suite=Suite.SCHWARZ_PICK.value, checks=checks)


def conformality_suite(job: JobConfig) -> VerificationReport:
    """phi_1^2 + phi_2^2 + phi_3^2 = 0 and lambda = |h'| + |g'| at random points."""
    tol = job.tol or 1e-12
    we = job.surface_data()
    m = associated_map(we)
    rng = np.random.default_rng(job.seed)
    residual, lam_gap, failures = 0.0, 0.0, 0
    for z in _random_points(rng, 100, *_grid_box(job)):
        try:
            scale = 1 + sum(abs(c) ** 2 for c in phi(we, z))
            residual = max(residual, conformality_residual(we, z) / scale)
            lam = conformal_factor(we, z)
            lam_gap = max(lam_gap, abs(lam - df_norm(m, z)) / (1 + lam))
        except (ExpressionError, MappingError) as e:
            logger.warning("Conformality check failed at %s: %s", z, e)
            failures += 1
    return VerificationReport(
        suite=Suite.CONFORMALITY.value,
        checks=[
            _at_most("max relative conformality residual", residual, tol),
            _at_most("max relative |lambda - (|h'| + |g'|)|", lam_gap, tol),
            _at_most("evaluation failures", float(failures), 0.0),
        ],
    )


def curvature_routes_suite(job: JobConfig) -> VerificationReport:
    """The W-E, dilatation and finite-difference curvature routes agree."""
    tol = job.tol or 1e-8
    rng = np.random.default_rng(job.seed)
    instances: List[WEData] = [job.surface_data()]
    instances += random_admissible_instances(4, job.seed, q_scale=0.5)

    fd_worst, dil_worst, sign_worst, failures = 0.0, 0.0, -math.inf, 0
    for we in instances:
        m = associated_map(we)
        for z in _random_points(rng, 40, (-3, 3), (0.5, 3)):
            try:
                k = gauss_curvature(we, z)
                k_fd = gauss_curvature_fd(we, z)
            except (ExpressionError, MappingError, SurfaceError) as e:
                logger.warning("Curvature of '%s' failed at %s: %s", we.name, z, e)
                failures += 1
                continue
            sign_worst = max(sign_worst, k)
            fd_worst = max(fd_worst, abs(k_fd - k) / max(1e-5, 1e-3 * abs(k)))
            try:
                k_dil = gauss_curvature_dilatation(m, z)
            except IndeterminateCurvatureError:
                continue
            dil_worst = max(dil_worst, abs(k_dil - k) / max(1.0, abs(k)))
    return VerificationReport(
        suite=Suite.CURVATURE_ROUTES.value,
        checks=[
            _at_most("finite-difference deviation / max(1e-5, 1e-3|K|)", fd_worst, 1.0),
            _at_most("dilatation route relative deviation", dil_worst, tol),
            _at_most("max K", sign_worst, 1e-15),
            _at_most("evaluation failures", float(failures), 0.0),
        ],
    )


def _max_ratio(we: WEData, points: np.ndarray) -> float:
    ratio = np.abs(gauss_curvature_values(we, points)) * points.imag**2
    if not np.isfinite(ratio).all():
        return math.inf
    return float(ratio.max())


def sharpness_suite(job: JobConfig) -> VerificationReport:
    """K = -1 above i for the extremal surface and |K| (Im z)^2 <= 1 elsewhere."""
    tol = job.tol or 1e-9
    extremal = extremal_halfplane_example()
    if not job.uses_extremal:
        logger.info("The sharpness suite always checks the built-in surfaces")

    k_i = gauss_curvature(extremal.we, 1j)
    k_fd = gauss_curvature_fd(extremal.we, 1j)
    points = job.grid.points()
    admissible = random_admissible_instances(5, job.seed)
    return VerificationReport(
        suite=Suite.SHARPNESS.value,
        checks=[
            _at_most("|K(i) + 1|", abs(k_i + 1), tol),
            _at_most("|K_fd(i) + 1|", abs(k_fd + 1), 1e-4),
            _at_most("| |K(i)| - 1/dist(i, R)^2 |", abs(abs(k_i) - schober_bound(1j)), tol),
            _at_most("extremal max |K| (Im z)^2 - 1", _max_ratio(extremal.we, points) - 1, 1e-6),
            _at_most(
                "admissible max |K| (Im z)^2 - 1",
                max(_max_ratio(we, points) for we in admissible) - 1,
                1e-6,
            ),
        ],
    )


def immersion_suite(job: JobConfig) -> VerificationReport:
    """Integrated positions against the projection map, closed forms and isothermality."""
    tol = job.tol or 1e-8
    we = job.surface_data()
    rng = np.random.default_rng(job.seed)
    points = _random_points(rng, 100, *_grid_box(job))

    positions, failures = immerse_batch(we, points, job.quadrature)
    projection, map_failures = map_values(associated_map(we), points, job.quadrature)
    usable = np.array(
        [k not in failures and k not in map_failures for k in range(points.size)], dtype=bool
    )
    gap = np.abs(positions[:, 0] + 1j * positions[:, 1] - projection)[usable]
    checks = [
        _at_most("max |(u + iv) - f(z)|", float(gap.max()) if gap.size else math.inf, tol),
        _at_most(
            "failed sample fraction",
            (len(failures) + len(map_failures)) / points.size,
            MAX_FAILED_FRACTION,
        ),
    ]
    if job.uses_extremal:
        expected = np.stack(extremal_closed_form(points), axis=1)
        closed_gap = np.abs(positions - expected)[usable]
        checks.append(
            _at_most(
                "max |(u, v, t) - closed form|",
                float(closed_gap.max()) if closed_gap.size else math.inf,
                tol,
            )
        )

    shear, skew, scale = 0.0, 0.0, 0.0
    for z in _random_points(rng, 10, (-2, 2), (0.2, 2)):
        e, f, g = first_fundamental_form(we, z, job.quadrature)
        lam = conformal_factor(we, z)
        shear = max(shear, abs(e - g) / e)
        skew = max(skew, abs(f) / e)
        scale = max(scale, abs(e - lam**2) / lam**2)
    checks += [
        _at_most("max |E - G| / E", shear, 1e-5),
        _at_most("max |F| / E", skew, 1e-5),
        _at_most("max |E - lambda^2| / lambda^2", scale, 1e-4),
    ]
    return VerificationReport(suite=Suite.IMMERSION.value, checks=checks)


SUITES: Dict[Suite, Callable[[JobConfig], VerificationReport]] = {
    Suite.HEINZ: heinz_suite,
    Suite.HEINZ_DISK: heinz_disk_suite,
    Suite.SCHWARZ_PICK: schwarz_pick_suite,
    Suite.CONFORMALITY: conformality_suite,
    Suite.CURVATURE_ROUTES: curvature_routes_suite,
    Suite.SHARPNESS: sharpness_suite,
    Suite.IMMERSION: immersion_suite,
}


def run_suite(job: JobConfig, suite: Optional[Suite] = None) -> VerificationReport:
    suite = Suite(suite or job.suite)
    logger.info("Running verification suite '%s'", suite.value)
    report = SUITES[suite](job)
    for check in report.checks:
        logger.info(
            "%s %s: observed %.6g, tolerance %.3g",
            "PASS" if check.passed else "FAIL", check.name, check.observed, check.tolerance,
        )
    return report
