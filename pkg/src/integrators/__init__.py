from integrators.base import (
    MIN_IMAG,
    BaseIntegrator,
    Path,
    PathError,
    QuadratureConfig,
    QuadratureError,
    QuadratureResult,
)
from integrators.contour import (
    batch_antiderivative,
    check_point,
    integrate_from_base,
    integrate_path,
    integrate_segment,
)
from integrators.kronrod import GaussKronrodIntegrator

__all__ = [
    "MIN_IMAG",
    "BaseIntegrator",
    "GaussKronrodIntegrator",
    "Path",
    "PathError",
    "QuadratureConfig",
    "QuadratureError",
    "QuadratureResult",
    "batch_antiderivative",
    "check_point",
    "integrate_from_base",
    "integrate_path",
    "integrate_segment",
]
