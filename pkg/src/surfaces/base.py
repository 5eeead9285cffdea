import math
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from expressions.base import Expr
from mappings.base import DomainMembershipError, HarmonicMap


class SurfaceError(ValueError):
    """Base class for minimal-surface errors."""


class IndeterminateCurvatureError(SurfaceError):
    """The dilatation form of K is 0/0 because g' vanishes."""


class StencilError(SurfaceError):
    """A finite-difference stencil leaves the parameter domain."""


class AdmissibilityError(SurfaceError):
    """p = 0 or |q| >= 1 at a sampled point."""


class WEData(BaseModel):
    """Weierstrass-Enneper data of a minimal graph.

    The immersion is anchored at ``base`` where the projection f takes the
    value ``base_value``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: Expr
    q: Expr
    base: complex = 1j
    base_value: complex = 1j
    name: str = ""

    @field_validator("base")
    @classmethod
    def _base_in_halfplane(cls, value: complex) -> complex:
        if not value.imag > 0:
            raise DomainMembershipError(f"Base point {value} must satisfy Im > 0")
        return value


class SurfaceSample(BaseModel):
    """One evaluated point of a minimal graph."""

    z: complex
    # (u, v, t); u + iv is the projection f(z)
    position: Tuple[float, float, float]
    conformal_factor: float
    K: float
    K_fd: float = math.nan
    # lambda_Omega^2 / lambda^2 on the half-plane
    bound: float = math.nan
    # 1 / dist(z, R)^2
    sharp_bound: float = math.nan
    # |K| (Im z)^2
    ratio: float = math.nan
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(math.isfinite(c) for c in self.position)


class ExtremalInstance(BaseModel):
    """The minimal graph over the half-plane whose curvature attains -1 above i."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    we: WEData
    map: HarmonicMap
    # a = m', so that h' = (a + 1)/2 and g' = (a - 1)/2
    a: Expr
    m: Expr
    t_integrand: Expr
