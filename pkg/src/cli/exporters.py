"""Mesh, table and report writers."""

import json
import logging
import math
import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from mappings.base import GridSpec
from surfaces.base import SurfaceSample

logger = logging.getLogger(__name__)

CURVATURE_COLUMNS = ["re", "im", "u", "v", "t", "lambda", "K", "K_fd", "schober_bound", "ratio"]
SURFACE_COLUMNS = ["re", "im", "u", "v", "t"]
FLOAT_FORMAT = "%.17g"


def samples_to_frame(samples: List[SurfaceSample]) -> pd.DataFrame:
    """One row per sample in grid order, with the curvature report columns."""
    rows = [
        {
            "re": s.z.real,
            "im": s.z.imag,
            "u": s.position[0],
            "v": s.position[1],
            "t": s.position[2],
            "lambda": s.conformal_factor,
            "K": s.K,
            "K_fd": s.K_fd,
            "schober_bound": s.sharp_bound,
            "ratio": s.ratio,
        }
        for s in samples
    ]
    return pd.DataFrame(rows, columns=CURVATURE_COLUMNS)


def curvature_summary(samples: List[SurfaceSample]) -> Dict[str, Any]:
    """Largest |K| (Im z)^2 over the usable samples and where it occurs."""
    usable = [s for s in samples if s.ok and math.isfinite(s.ratio)]
    summary: Dict[str, Any] = {
        "samples": len(samples),
        "failures": sum(1 for s in samples if not s.ok),
    }
    if usable:
        best = max(usable, key=lambda s: s.ratio)
        summary.update(
            {
                "max_ratio": best.ratio,
                "argmax": [best.z.real, best.z.imag],
                "K_at_argmax": best.K,
                "max_abs_K": max(abs(s.K) for s in usable),
            }
        )
    else:
        summary.update({"max_ratio": None, "argmax": None, "K_at_argmax": None, "max_abs_K": None})
    return summary


def _format_float(x: float) -> str:
    return FLOAT_FORMAT % x


def write_text(text: str, path: Optional[Union[str, Path]]) -> None:
    """Write to ``path``, or to stdout when ``path`` is None or '-'."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        raise OSError(f"Failed to write {path}: {e}") from e
    logger.info("Wrote %s", path)


def _json_safe(data: Any) -> Any:
    """Replace non-finite floats with None; JSON has no NaN or Infinity."""
    if isinstance(data, dict):
        return {key: _json_safe(value) for key, value in data.items()}
    if isinstance(data, (list, tuple)):
        return [_json_safe(value) for value in data]
    if isinstance(data, float) and not math.isfinite(data):
        return None
    return data


def dump_json(data: Any) -> str:
    return json.dumps(_json_safe(data), indent=2, allow_nan=False) + "\n"


class BaseExporter(ABC):
    """Base class for writers of sampled surfaces."""

    @abstractmethod
    def render(self, samples: List[SurfaceSample], grid: GridSpec) -> str:
        """Serialize the samples of ``grid`` to text."""
        pass

    def write(
        self, samples: List[SurfaceSample], grid: GridSpec, path: Optional[Union[str, Path]]
    ) -> None:
        write_text(self.render(samples, grid), path)


class ObjExporter(BaseExporter):
    """Wavefront OBJ mesh of the immersion.

    Vertices follow the row-major grid order; each grid cell becomes two
    triangles. Samples that failed are dropped together with every cell that
    touches them, and the remaining vertices are renumbered from 1.
    """

    def render(self, samples: List[SurfaceSample], grid: GridSpec) -> str:
        n_im, n_re = grid.shape
        if len(samples) != grid.size:
            raise ValueError(f"Expected {grid.size} samples for the grid, got {len(samples)}")

        usable = np.array([s.ok for s in samples], dtype=bool)
        index = np.cumsum(usable)  # 1-based position among usable vertices
        lines = [
            "v " + " ".join(_format_float(c) for c in s.position)
            for s, ok in zip(samples, usable)
            if ok
        ]

        omitted = 0
        for i in range(n_im - 1):
            for j in range(n_re - 1):
                a = i * n_re + j
                b, c, d = a + 1, a + n_re, a + n_re + 1
                if not usable[[a, b, c, d]].all():
                    omitted += 1
                    continue
                lines.append(f"f {index[a]} {index[b]} {index[d]}")
                lines.append(f"f {index[a]} {index[d]} {index[c]}")
        if omitted:
            logger.warning("Omitted %d mesh cells with failed vertices", omitted)
        return "\n".join(lines) + "\n"


class CurvatureCsvExporter(BaseExporter):
    """Per-sample curvature table with 17-significant-digit floats."""

    columns = CURVATURE_COLUMNS

    def render(self, samples: List[SurfaceSample], grid: GridSpec) -> str:
        frame = samples_to_frame(samples)[self.columns]
        return frame.to_csv(
            index=False, float_format=FLOAT_FORMAT, na_rep="nan", lineterminator="\n"
        )


class SurfaceCsvExporter(CurvatureCsvExporter):
    """Parameter point and position only."""

    columns = SURFACE_COLUMNS
