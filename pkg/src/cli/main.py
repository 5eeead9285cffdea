"""``minigraph`` command-line entry point."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from cli.config import (
    DEFAULT_EXTREMAL_DIR,
    MAX_FAILED_FRACTION,
    Command,
    ConfigError,
    JobConfig,
    OutputFormat,
    Suite,
    load_config_file,
    parse_complex_pair,
)
from cli.exporters import (
    CurvatureCsvExporter,
    ObjExporter,
    SurfaceCsvExporter,
    curvature_summary,
    dump_json,
    samples_to_frame,
    write_text,
)
from cli.suites import run_suite
from expressions.base import ExpressionError
from integrators.base import PathError, QuadratureError
from mappings.base import GridSpec, MappingError
from surfaces.base import SurfaceError, SurfaceSample
from surfaces.enneper import sample_surface
from visualization.curvature_figures import ratio_heatmap, write_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]
JOB_FLAGS = ("p", "q", "base", "grid", "format", "output_path", "suite", "tol", "extremal", "seed")


def _grid_arg(text: str) -> str:
    try:
        GridSpec.from_string(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e
    return text


def _base_arg(text: str) -> str:
    try:
        parse_complex_pair(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e
    return text


def _join_grid_values(argv: List[str]) -> List[str]:
    """Rewrite "--grid VALUE" as "--grid=VALUE"; grid values may start with '-'."""
    joined: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token == "--grid":
            value = next(tokens, None)
            joined.append(token if value is None else f"--grid={value}")
        else:
            joined.append(token)
    return joined


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", help="Weierstrass-Enneper p, e.g. '1' or '(z+i)^2/(4*i*z)'")
    common.add_argument("--q", help="Weierstrass-Enneper q, e.g. '(z-i)/(z+i)'")
    common.add_argument("--base", type=_base_arg, help="Base point RE,IM (default 0,1)")
    common.add_argument(
        "--grid",
        type=_grid_arg,
        help="RE_MIN:RE_MAX:N_RE x IM_MIN:IM_MAX:N_IM, e.g. -3:3:50x0.05:3:50",
    )
    common.add_argument("--format", choices=[f.value for f in OutputFormat])
    common.add_argument("--out", dest="output_path", help="Output file (directory for 'extremal')")
    common.add_argument("--tol", type=float, help="Override the primary tolerance of a suite")
    common.add_argument("--config", help="JSON file with job settings; flags take precedence")
    common.add_argument(
        "--extremal",
        action="store_true",
        default=None,
        help="Use the built-in extremal surface over the half-plane",
    )
    common.add_argument("--seed", type=int, help="Seed for random sample points and corpora")
    common.add_argument("--log-level", choices=LOG_LEVELS, default=None)
    common.add_argument(
        "-v", "--verbose", action="store_true", help="Shortcut for --log-level INFO"
    )

    parser = argparse.ArgumentParser(
        prog="minigraph",
        description="Minimal graphs from Weierstrass-Enneper data: meshes, curvature "
        "reports and numerical checks of Heinz-type and curvature bounds.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("surface", parents=[common], help="Export a mesh of the surface")
    commands.add_parser("curvature", parents=[common], help="Curvature table and summary")
    verify = commands.add_parser("verify", parents=[common], help="Run a verification suite")
    verify.add_argument("--suite", choices=[s.value for s in Suite], required=True)
    commands.add_parser(
        "extremal",
        parents=[common],
        help="Mesh, curvature table and report of the extremal surface",
    )
    return parser


def configure_logging(args: argparse.Namespace) -> None:
    level = args.log_level or ("INFO" if args.verbose else "WARNING")
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def build_job(args: argparse.Namespace) -> JobConfig:
    """JobConfig from the optional config file overridden by explicit flags."""
    fields: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    for name in JOB_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    fields["command"] = args.command
    return JobConfig.model_validate(fields)


def _failed_fraction(samples: List[SurfaceSample]) -> float:
    if not samples:
        return 0.0
    return sum(1 for s in samples if not s.ok) / len(samples)


def _sample_exit_code(samples: List[SurfaceSample]) -> int:
    fraction = _failed_fraction(samples)
    if fraction > MAX_FAILED_FRACTION:
        logger.error("%.2f%% of the samples failed", 100 * fraction)
        return EXIT_FAILED
    return EXIT_OK


def cmd_surface(job: JobConfig) -> int:
    samples = sample_surface(job.surface_data(), job.grid, job.quadrature)
    exporter = ObjExporter() if job.output_format is OutputFormat.OBJ else SurfaceCsvExporter()
    exporter.write(samples, job.grid, job.output_path)
    return _sample_exit_code(samples)


def cmd_curvature(job: JobConfig) -> int:
    we = job.surface_data()
    samples = sample_surface(we, job.grid, job.quadrature)
    summary = dump_json(curvature_summary(samples))
    fmt = job.output_format
    if fmt is OutputFormat.JSON:
        write_text(summary, job.output_path)
    else:
        if fmt is OutputFormat.SVG:
            if job.output_path is None:
                raise ConfigError("The svg format needs --out")
            write_svg(ratio_heatmap(samples_to_frame(samples), job.grid, we.name), job.output_path)
        else:
            CurvatureCsvExporter().write(samples, job.grid, job.output_path)
        if job.output_path is not None:
            sys.stdout.write(summary)
    return _sample_exit_code(samples)


def cmd_verify(job: JobConfig) -> int:
    report = run_suite(job)
    write_text(dump_json(report.to_json_dict()), job.output_path)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_extremal(job: JobConfig) -> int:
    """Mesh, curvature table and sharpness report of the extremal surface in one directory."""
    out = Path(job.output_path or DEFAULT_EXTREMAL_DIR)
    out.mkdir(parents=True, exist_ok=True)
    we = job.surface_data()
    samples = sample_surface(we, job.grid, job.quadrature)

    fmt = job.format
    if fmt in (None, OutputFormat.OBJ):
        ObjExporter().write(samples, job.grid, out / "surface.obj")
    if fmt in (None, OutputFormat.CSV):
        CurvatureCsvExporter().write(samples, job.grid, out / "curvature.csv")
    if fmt is OutputFormat.SVG:
        figure = ratio_heatmap(samples_to_frame(samples), job.grid, we.name)
        write_svg(figure, out / "curvature.svg")

    report = run_suite(job, Suite.SHARPNESS)
    result = report.to_json_dict()
    result["summary"] = curvature_summary(samples)
    write_text(dump_json(result), out / "verification.json")
    if not report.passed:
        return EXIT_FAILED
    return _sample_exit_code(samples)


COMMANDS: Dict[Command, Callable[[JobConfig], int]] = {
    Command.SURFACE: cmd_surface,
    Command.CURVATURE: cmd_curvature,
    Command.VERIFY: cmd_verify,
    Command.EXTREMAL: cmd_extremal,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_join_grid_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args)

    try:
        job = build_job(args)
    except (ConfigError, ValidationError, ValueError) as e:
        logger.error("Invalid configuration: %s", e)
        return EXIT_USAGE

    try:
        return COMMANDS[job.command](job)
    except ConfigError as e:
        logger.error("Invalid configuration: %s", e)
        return EXIT_USAGE
    except (
        ExpressionError,
        MappingError,
        PathError,
        QuadratureError,
        SurfaceError,
        OSError,
        RuntimeError,
    ) as e:
        logger.error("Failed to run '%s': %s", job.command.value, e)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
