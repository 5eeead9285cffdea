"""Cayley map, Poisson kernel, hyperbolic densities and Schwarz–Pick checks."""

import math
from typing import List, Union

import numpy as np

from expressions.base import Const, Expr, Z
from expressions.evaluation import differentiate, evaluate_scalar
from mappings.base import Domain, DomainMembershipError, MappingError, PoleError

# Lower-bound constants for |Df| of harmonic diffeomorphisms onto other
# domains. None of these are checked numerically.
#: any convex target domain, |Df(0)| >= CONVEX_HEINZ_CONSTANT * dist(f(0), boundary)
CONVEX_HEINZ_CONSTANT = 0.25
#: disk onto disk (Heinz)
DISK_HEINZ_CONSTANT = 1 / math.pi
#: disk onto disk fixing the origin, sharp at z = 0 (Hall)
HALL_CONSTANT = 3 * math.sqrt(3) / (2 * math.pi)
#: conjectured sharp value for convex domains
CONJECTURED_CONVEX_CONSTANT = 0.5
#: conjectured sharp value for the disk
CONJECTURED_DISK_CONSTANT = 2 / math.pi


def cayley_disk_to_halfplane(z: complex) -> complex:
    """a(z) = i(1+z)/(1-z), the disk onto the upper half-plane with a(0) = i."""
    z = complex(z)
    if z == 1:
        raise PoleError("The Cayley map has a pole at z = 1")
    if not abs(z) < 1:
        raise DomainMembershipError(f"{z} is not inside the unit disk")
    return 1j * (1 + z) / (1 - z)


def cayley_halfplane_to_disk(w: complex) -> complex:
    """Inverse Cayley map (w - i)/(w + i)."""
    w = complex(w)
    if not w.imag > 0:
        raise DomainMembershipError(f"{w} is not inside the upper half-plane")
    return (w - 1j) / (w + 1j)


def cayley_derivative(z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
    """a'(z) = 2i/(1-z)^2."""
    return 2j / (1 - z) ** 2


def cayley_expr() -> Expr:
    return Const(1j) * (1 + Z) / (1 - Z)


def halfplane_to_disk_expr() -> Expr:
    """q(z) = (z-i)/(z+i), the conformal map of the half-plane onto the disk with q(i) = 0."""
    return (Z - 1j) / (Z + 1j)


def poisson_kernel(z: complex, t: float) -> float:
    """P(z, t) = y / |z - t|^2 for the upper half-plane."""
    z = complex(z)
    if not z.imag > 0:
        raise DomainMembershipError(f"{z} is not inside the upper half-plane")
    return z.imag / abs(z - t) ** 2


def hyperbolic_density(domain: Union[Domain, str], z: complex) -> float:
    """Density of the hyperbolic metric normalized to curvature -4.

    1/(2 Im z) on the half-plane, 1/(1 - |z|^2) on the disk.
    """
    domain = Domain(domain)
    z = complex(z)
    if domain is Domain.HALFPLANE:
        if not z.imag > 0:
            raise DomainMembershipError(f"{z} is not inside the upper half-plane")
        return 1 / (2 * z.imag)
    if not abs(z) < 1:
        raise DomainMembershipError(f"{z} is not inside the unit disk")
    return 1 / (1 - abs(z) ** 2)


def schwarz_pick_residual(
    q: Expr, z: complex, domain: Union[Domain, str] = Domain.HALFPLANE
) -> float:
    """lambda(z) (1 - |q(z)|^2) - |q'(z)|; non-negative for analytic q into the disk.

    Raises:
        MappingError: |q(z)| >= 1
        DomainMembershipError: z is outside ``domain``
    """
    density = hyperbolic_density(domain, z)
    value = evaluate_scalar(q, z)
    if abs(value) >= 1:
        raise MappingError(f"|q(z)| = {abs(value)} is not below 1 at z = {z}")
    slope = abs(evaluate_scalar(differentiate(q), z))
    return density * (1 - abs(value) ** 2) - slope


def blaschke_factor(alpha: complex) -> Expr:
    """(z - alpha)/(z - conj(alpha)), unimodular on the real axis."""
    if not alpha.imag > 0:
        raise DomainMembershipError(f"Blaschke zero {alpha} must lie in the upper half-plane")
    return (Z - alpha) / (Z - alpha.conjugate())


def disk_valued_corpus(n: int = 20, seed: int = 0) -> List[Expr]:
    """Deterministic corpus of analytic maps of the half-plane into the disk.

    Each entry is r e^{i theta} times a product of one to three half-plane
    Blaschke factors, with 0 < r <= 1.
    """
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(n):
        factors = int(rng.integers(1, 4))
        rotation = complex(rng.uniform(0.3, 1.0) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        q: Expr = Const(rotation)
        for _ in range(factors):
            alpha = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3))
            q = q * blaschke_factor(alpha)
        corpus.append(q)
    return corpus
