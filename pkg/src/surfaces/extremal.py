"""Built-in surfaces: the extremal graph over the half-plane and admissible families."""

import logging
from typing import List, Tuple, Union

import numpy as np

from expressions.base import Const, Expr
from expressions.parser import parse
from mappings.base import HarmonicMap
from mappings.harmonic import heinz_lower_bound
from mappings.hyperbolic import blaschke_factor
from surfaces.base import ExtremalInstance, WEData

logger = logging.getLogger(__name__)

EXTREMAL_A = "(z^2 - 1)/(2*i*z)"
EXTREMAL_M = "(1 + i*pi + z^2 - 2*log(z))/(4*i)"
EXTREMAL_Q = "(z - i)/(z + i)"
EXTREMAL_T_INTEGRAND = "(1 + z^2)/(2*z)"

# q of random admissible data is this factor times a half-plane Blaschke factor
ADMISSIBLE_Q_SCALE = 0.9


def extremal_halfplane_example() -> ExtremalInstance:
    """Minimal graph over the upper half-plane with K = -1 above z = i.

    Its projection f = h + conj(g) has h' = (a + 1)/2 and g' = (a - 1)/2 where
    a = m' = (z^2 - 1)/(2iz), fixes i, and maps onto the half-plane with
    Re f = Re m and Im f = Im z. The third coordinate is
    t = -Re int_i^z (1 + w^2)/(2w) dw.
    """
    a = parse(EXTREMAL_A)
    h_prime = (a + 1) / 2
    g_prime = (a - 1) / 2
    m = parse(EXTREMAL_M)
    q = parse(EXTREMAL_Q)
    name = "extremal"
    return ExtremalInstance(
        we=WEData(p=h_prime, q=q, base=1j, base_value=1j, name=name),
        map=HarmonicMap(
            h_prime=h_prime,
            g_prime=g_prime,
            base_a=1j,
            base_b=1j,
            closed_form_re=m,
            name=name,
        ),
        a=a,
        m=m,
        t_integrand=parse(EXTREMAL_T_INTEGRAND),
    )


def extremal_closed_form(
    z: Union[complex, np.ndarray]
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form (u, v, t) of the extremal surface.

    u = (xy + arctan(x/y))/2, v = y and t = (-1 - Re z^2 - 2 Re log z)/4.
    """
    z = np.asarray(z, dtype=np.complex128)
    x, y = z.real, z.imag
    u = 0.5 * (x * y + np.arctan(x / y))
    t = 0.25 * (-1 - (x**2 - y**2) - np.log(x**2 + y**2))
    return u, y, t


def admissible_we_data(q: Expr, a: complex = 1j, b: complex = 1j, name: str = "") -> WEData:
    """W-E data of a minimal graph over the half-plane for any q into the disk.

    With c = Im(b)/Im(a) and p = c/(1 - q^2), the projection has
    h' - g' = c, hence Im f = c Im z, f(a) = b, and
    Re(h' + g') = c Re((1 + q^2)/(1 - q^2)) > 0.
    """
    c = heinz_lower_bound(a, b)
    return WEData(p=Const(c) / (1 - q**2), q=q, base=a, base_value=b, name=name)


def random_admissible_instances(
    n: int = 5,
    seed: int = 0,
    scale: Tuple[float, float] = (1.0, 2.0),
    q_scale: float = ADMISSIBLE_Q_SCALE,
) -> List[WEData]:
    """Deterministic family of admissible data with Im f = c Im z, c in ``scale``.

    For c >= 1 the sharp bound gives |K| (Im z)^2 <= 1/c^2 <= 1. q is
    ``q_scale`` times a rotated half-plane Blaschke factor.
    """
    rng = np.random.default_rng(seed)
    instances = []
    for k in range(n):
        alpha = complex(rng.uniform(-2, 2), rng.uniform(0.3, 3))
        rotation = complex(np.exp(1j * rng.uniform(0, 2 * np.pi)))
        q = Const(q_scale * rotation) * blaschke_factor(alpha)
        a = complex(rng.uniform(-1, 1), rng.uniform(0.5, 2))
        c = rng.uniform(*scale)
        b = complex(rng.uniform(-1, 1), c * a.imag)
        instances.append(admissible_we_data(q, a, b, name=f"admissible-{k}"))
    logger.debug("Generated %d admissible instances with seed %d", n, seed)
    return instances
