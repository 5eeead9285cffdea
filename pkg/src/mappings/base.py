import cmath
import math
import re
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from expressions.base import Expr

DEFAULT_SLACK = 1e-9
DEFAULT_BOUNDARY_MARGIN = 1e-3


class MappingError(ValueError):
    """Base class for harmonic-map errors."""


class LewyViolationError(MappingError):
    """h' vanishes or the map is not sense-preserving at a queried point."""


class DomainMembershipError(MappingError):
    """A point lies outside the disk or the half-plane it was meant for."""


class PoleError(MappingError):
    """The Cayley map was evaluated at its pole z = 1."""


class Domain(str, Enum):
    DISK = "disk"
    HALFPLANE = "halfplane"


class HarmonicMap(BaseModel):
    """Planar harmonic map f = b + int_a^z h' + conj(int_a^z g').

    Only the first-order data (h', g') is stored; positions are recovered by
    contour integration from the base point ``base_a`` where f equals
    ``base_b``. ``closed_form_re``, when given, is an expression whose real
    part equals Re f and is used to validate the integrated positions.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    h_prime: Expr
    g_prime: Expr
    base_a: complex = 1j
    base_b: complex = 1j
    closed_form_re: Optional[Expr] = None
    name: str = ""

    @field_validator("base_a")
    @classmethod
    def _base_in_halfplane(cls, value: complex) -> complex:
        if not value.imag > 0:
            raise DomainMembershipError(f"Base point {value} must satisfy Im a > 0")
        return value


_GRID_AXIS = r"\s*([-+0-9.eE]+)\s*:\s*([-+0-9.eE]+)\s*:\s*(\d+)\s*"
_GRID_PATTERN = re.compile(rf"^{_GRID_AXIS}x{_GRID_AXIS}$")


class GridSpec(BaseModel):
    """Rectangular grid of parameter points in the upper half-plane.

    Points are ordered row-major: one row per imaginary level, real part
    varying fastest.
    """

    model_config = ConfigDict(frozen=True)

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    n_re: int
    n_im: int
    boundary_margin: float = DEFAULT_BOUNDARY_MARGIN

    @model_validator(mode="after")
    def _check(self) -> "GridSpec":
        if self.n_re < 1 or self.n_im < 1:
            raise ValueError("Grid counts must be at least 1")
        if self.re_min > self.re_max or self.im_min > self.im_max:
            raise ValueError("Grid bounds must satisfy min <= max")
        if self.im_min < self.boundary_margin:
            raise ValueError(
                f"im_min={self.im_min} is closer to the real axis than {self.boundary_margin}"
            )
        return self

    @classmethod
    def from_string(cls, text: str) -> "GridSpec":
        """Parse ``RE_MIN:RE_MAX:N_RE x IM_MIN:IM_MAX:N_IM``."""
        match = _GRID_PATTERN.match(text)
        if not match:
            raise ValueError(f"Invalid grid '{text}', expected min:max:count x min:max:count")
        re_min, re_max, n_re, im_min, im_max, n_im = match.groups()
        return cls(
            re_min=float(re_min),
            re_max=float(re_max),
            n_re=int(n_re),
            im_min=float(im_min),
            im_max=float(im_max),
            n_im=int(n_im),
        )

    @property
    def shape(self) -> tuple:
        return (self.n_im, self.n_re)

    @property
    def size(self) -> int:
        return self.n_re * self.n_im

    def points(self) -> np.ndarray:
        xs = np.linspace(self.re_min, self.re_max, self.n_re)
        ys = np.linspace(self.im_min, self.im_max, self.n_im)
        return (xs[None, :] + 1j * ys[:, None]).ravel()


class DiskGridSpec(BaseModel):
    """Polar grid on the closed disk |z| <= radius < 1, origin first."""

    model_config = ConfigDict(frozen=True)

    radius: float = 0.95
    n_radial: int = 40
    n_angular: int = 64

    @model_validator(mode="after")
    def _check(self) -> "DiskGridSpec":
        if not 0 < self.radius < 1:
            raise ValueError("Disk grid radius must lie in (0, 1)")
        if self.n_radial < 1 or self.n_angular < 1:
            raise ValueError("Grid counts must be at least 1")
        return self

    def points(self) -> np.ndarray:
        radii = np.linspace(0.0, self.radius, self.n_radial + 1)[1:]
        angles = 2 * np.pi * np.arange(self.n_angular) / self.n_angular
        rings = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
        return np.concatenate([[0j], rings])


class BoundViolation(BaseModel):
    index: int
    z: complex
    value: float


class PointFailure(BaseModel):
    index: int
    z: complex
    message: str


class BoundReport(BaseModel):
    """Result of checking a pointwise lower bound over a grid."""

    bound: float
    min_value: float
    argmin: complex
    samples: int
    slack: float = DEFAULT_SLACK
    violations: List[BoundViolation] = []
    failures: List[PointFailure] = []

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "bound": self.bound,
            "min_value": self.min_value if math.isfinite(self.min_value) else None,
            "argmin": [self.argmin.real, self.argmin.imag] if cmath.isfinite(self.argmin) else None,
            "samples": self.samples,
            "violations": [
                {"index": v.index, "z": [v.z.real, v.z.imag], "value": v.value}
                for v in self.violations
            ],
            "failures": [
                {"index": f.index, "z": [f.z.real, f.z.imag], "message": f.message}
                for f in self.failures
            ],
        }


def build_report(
    points: np.ndarray,
    values: np.ndarray,
    bound: float,
    slack: float,
    failure_messages: Dict[int, str],
) -> BoundReport:
    """Assemble a BoundReport; entries listed in ``failure_messages`` are skipped."""
    failures = [
        PointFailure(index=int(k), z=complex(points[k]), message=message)
        for k, message in sorted(failure_messages.items())
    ]
    usable = np.array([k not in failure_messages for k in range(points.size)], dtype=bool)
    if usable.any():
        masked = np.where(usable, values, np.inf)
        best = int(np.argmin(masked))
        min_value, argmin = float(values[best]), complex(points[best])
    else:
        min_value, argmin = math.inf, complex(math.nan, math.nan)
    violations = [
        BoundViolation(index=int(k), z=complex(points[k]), value=float(values[k]))
        for k in np.flatnonzero(usable & (values < bound - slack))
    ]
    return BoundReport(
        bound=bound,
        min_value=min_value,
        argmin=argmin,
        samples=int(usable.sum()),
        slack=slack,
        violations=violations,
        failures=failures,
    )
