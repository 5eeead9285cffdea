from abc import ABC, abstractmethod
from typing import List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, field_validator

from expressions.base import Expr

# Points closer than this to the real axis are rejected.
MIN_IMAG = 1e-9


class PathError(ValueError):
    """An integration path is degenerate or leaves the upper half-plane."""


class QuadratureError(RuntimeError):
    """Tolerance not reached; carries the best estimate and its error bound."""

    def __init__(self, message: str, estimate: complex, error_bound: float):
        super().__init__(f"{message} (estimate {estimate}, error bound {error_bound:.3e})")
        self.estimate = estimate
        self.error_bound = error_bound


class QuadratureConfig(BaseModel):
    """Tolerances for adaptive quadrature."""

    model_config = ConfigDict(frozen=True)

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 40
    # Subinterval budget per segment; reaching it ends refinement like max_depth.
    max_intervals: int = 4096

    @field_validator("abs_tol", "rel_tol")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("Tolerances must be positive")
        return value

    @field_validator("max_depth", "max_intervals")
    @classmethod
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("max_depth and max_intervals must be at least 1")
        return value


class QuadratureResult(BaseModel):
    """Outcome of integrating one segment."""

    value: complex
    error: float
    converged: bool
    intervals: int
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failure is None and self.converged


class Path(BaseModel):
    """A polyline in the upper half-plane."""

    model_config = ConfigDict(frozen=True)

    vertices: List[complex]

    @field_validator("vertices")
    @classmethod
    def _check_vertices(cls, vertices: List[complex]) -> List[complex]:
        if len(vertices) < 2:
            raise PathError("A path needs at least two vertices")
        for vertex in vertices:
            if not vertex.imag > MIN_IMAG:
                raise PathError(f"Vertex {vertex} is not inside the upper half-plane")
        for first, second in zip(vertices, vertices[1:]):
            if first == second:
                raise PathError(f"Consecutive vertices coincide at {first}")
        return vertices

    def segments(self) -> List[tuple]:
        return list(zip(self.vertices, self.vertices[1:]))


class BaseIntegrator(ABC):
    """Base class for line-integral rules over straight segments."""

    @abstractmethod
    def integrate_segments(
        self,
        f: Expr,
        starts: Sequence[complex],
        ends: Sequence[complex],
        config: QuadratureConfig,
    ) -> List[QuadratureResult]:
        """Integrate ``f`` along every segment ``starts[k] -> ends[k]``.

        A failure on one segment is reported in its result and never aborts
        the others.
        """
        pass
