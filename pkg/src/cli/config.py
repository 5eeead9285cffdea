"""Job configuration for the command-line front end."""

import json
import re
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from expressions.base import ExpressionError
from expressions.parser import parse
from integrators.base import QuadratureConfig
from mappings.base import DiskGridSpec, GridSpec
from surfaces.base import WEData
from surfaces.extremal import extremal_halfplane_example

DEFAULT_GRID = "-3:3:50x0.05:3:50"
DEFAULT_EXTREMAL_DIR = "extremal_output"
# Fraction of failed samples above which a run exits non-zero.
MAX_FAILED_FRACTION = 0.01


class ConfigError(ValueError):
    """Invalid job configuration or command-line input."""


class Command(str, Enum):
    SURFACE = "surface"
    CURVATURE = "curvature"
    VERIFY = "verify"
    EXTREMAL = "extremal"


class OutputFormat(str, Enum):
    OBJ = "obj"
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


class Suite(str, Enum):
    HEINZ = "heinz"
    HEINZ_DISK = "heinz-disk"
    SCHWARZ_PICK = "schwarz-pick"
    CONFORMALITY = "conformality"
    CURVATURE_ROUTES = "curvature-routes"
    SHARPNESS = "sharpness"
    IMMERSION = "immersion"


ALLOWED_FORMATS = {
    Command.SURFACE: {OutputFormat.OBJ, OutputFormat.CSV},
    Command.CURVATURE: {OutputFormat.CSV, OutputFormat.JSON, OutputFormat.SVG},
    Command.VERIFY: {OutputFormat.JSON},
    Command.EXTREMAL: {OutputFormat.OBJ, OutputFormat.CSV, OutputFormat.JSON, OutputFormat.SVG},
}

DEFAULT_FORMATS = {
    Command.SURFACE: OutputFormat.OBJ,
    Command.CURVATURE: OutputFormat.CSV,
    Command.VERIFY: OutputFormat.JSON,
}

_COMPLEX_PAIR = re.compile(r"^\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*$")


def parse_complex_pair(text: str) -> complex:
    """Parse ``RE,IM`` into a complex number."""
    match = _COMPLEX_PAIR.match(text)
    if not match:
        raise ValueError(f"Invalid complex value '{text}', expected RE,IM")
    return complex(float(match.group(1)), float(match.group(2)))


class JobConfig(BaseModel):
    """Everything one CLI invocation needs.

    Loaded from ``--config`` JSON and then overridden by explicit flags. When
    neither p nor q is given (or ``extremal`` is set) the built-in extremal
    surface is used.
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    p: Optional[str] = None
    q: Optional[str] = None
    extremal: bool = False
    # base point of the W-E integrals; the projection is normalized by f(base) = base
    base: complex = 1j
    grid: GridSpec = GridSpec.from_string(DEFAULT_GRID)
    disk_grid: DiskGridSpec = DiskGridSpec()
    quadrature: QuadratureConfig = QuadratureConfig()
    output_path: Optional[str] = None
    format: Optional[OutputFormat] = None
    suite: Optional[Suite] = None
    tol: Optional[float] = None
    seed: int = 0

    @field_validator("base", mode="before")
    @classmethod
    def _parse_base(cls, value: Any) -> Any:
        if isinstance(value, str):
            return parse_complex_pair(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(float(value[0]), float(value[1]))
        return value

    @field_validator("grid", mode="before")
    @classmethod
    def _parse_grid(cls, value: Any) -> Any:
        if isinstance(value, str):
            return GridSpec.from_string(value)
        return value

    @field_validator("tol")
    @classmethod
    def _positive_tol(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not value > 0:
            raise ValueError("--tol must be positive")
        return value

    @model_validator(mode="after")
    def _check(self) -> "JobConfig":
        if not self.base.imag > 0:
            raise ValueError(f"Base point {self.base} must satisfy Im > 0")
        if (self.p is None) != (self.q is None):
            raise ValueError("--p and --q must be given together")
        if self.command in (Command.SURFACE, Command.CURVATURE):
            if self.p is None and not self.extremal:
                raise ValueError(f"'{self.command.value}' needs --p and --q, or --extremal")
        if self.command is Command.VERIFY and self.suite is None:
            raise ValueError("'verify' needs --suite")
        if self.format is not None and self.format not in ALLOWED_FORMATS[self.command]:
            raise ValueError(
                f"Format '{self.format.value}' is not available for '{self.command.value}'"
            )
        for source in (self.p, self.q):
            if source is not None:
                try:
                    parse(source)
                except ExpressionError as e:
                    raise ValueError(f"Invalid expression '{source}': {e}") from e
        return self

    @property
    def uses_extremal(self) -> bool:
        return self.extremal or self.command is Command.EXTREMAL or self.p is None

    @property
    def output_format(self) -> Optional[OutputFormat]:
        return self.format or DEFAULT_FORMATS.get(self.command)

    def surface_data(self) -> WEData:
        """W-E data selected by this job."""
        if self.uses_extremal:
            return extremal_halfplane_example().we
        return WEData(
            p=parse(self.p),
            q=parse(self.q),
            base=self.base,
            base_value=self.base,
            name=f"p={self.p}, q={self.q}",
        )


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a ``--config`` JSON file into a dict of JobConfig fields."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Failed to read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a JSON object")
    return data
