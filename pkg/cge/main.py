"""
Casimir Graphene Engine - command line entry point.

Usage:
    cge ratio-scan --substrate fused-silica --output ratios.csv
    cge gradient-scan --config run.ini --coated one --format json
"""
import argparse
import configparser
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from cge.commands import band_compare, dumps, gradient_scan, pressure_scan, ratio_scan, thermal_correction
from cge.commands.common import CommandOutput
from cge.config import get_settings
from cge.exceptions import CGEError, ConfigurationError
from cge.schemas import RunConfig
from cge.utils.output import write_table, write_trace

logger = logging.getLogger("cge")

COMMANDS: Dict[str, Callable[[RunConfig], CommandOutput]] = {
    "pressure-scan": pressure_scan.run_pressure_scan,
    "ratio-scan": ratio_scan.run_ratio_scan,
    "gradient-scan": gradient_scan.run_gradient_and_correction,
    "thermal-correction": thermal_correction.run_thermal_correction,
    "band-compare": band_compare.run_band_compare,
    "dump-eps": dumps.run_dump_eps,
    "dump-reflection": dumps.run_dump_reflection,
    "dump-polarization": dumps.run_dump_polarization,
}

COATED_CHOICES = {"none": (False, False), "one": (True, False), "both": (True, True)}


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(prog="cge", description=settings.app_name)
    parser.add_argument("command", choices=sorted(COMMANDS), help="What to compute")
    parser.add_argument("--config", help="INI run configuration file")
    parser.add_argument("--a-min", type=float, help="Smallest separation (m)")
    parser.add_argument("--a-max", type=float, help="Largest separation (m)")
    parser.add_argument("--points", type=int, help="Number of grid points")
    parser.add_argument("--spacing", choices=["log", "linear"], help="Grid spacing")
    parser.add_argument("--temperature", type=float, help="Temperature (K); 0 selects the T = 0 formula")
    parser.add_argument("--substrate", help="Material name of both plates")
    parser.add_argument("--coated", choices=sorted(COATED_CHOICES), help="Which plates carry graphene")
    parser.add_argument("--film", help="Film on both plates as NAME:THICKNESS")
    parser.add_argument("--delta", type=float, help="Graphene gap parameter (eV)")
    parser.add_argument("--output", help="Output file (default: standard output)")
    parser.add_argument("--format", choices=["csv", "json"], help="Output format")
    parser.add_argument("--trace", action="store_true", default=None, help="Write per-term Matsubara traces")
    parser.add_argument("--workers", type=int, help="Worker processes for scans")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="More logging (-vv for debug)")
    return parser


def configure_logging(verbosity: int = 0) -> None:
    """Configure the root logger once from settings and -v flags."""
    level = get_settings().log_level.upper()
    if verbosity == 1:
        level = "INFO"
    elif verbosity >= 2:
        level = "DEBUG"
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def load_config(args: argparse.Namespace) -> RunConfig:
    """
    Merge the INI file (if any) with the command-line flags.

    Raises:
        ConfigurationError: on unreadable files, bad INI syntax or invalid values
    """
    try:
        if args.config:
            try:
                text = Path(args.config).read_text(encoding="utf-8")
            except OSError as exc:
                raise ConfigurationError(f"cannot read config {args.config}: {exc}")
            config = RunConfig.from_ini(text)
        else:
            config = RunConfig()

        sides: Dict[str, Dict] = {"side1": {}, "side2": {}}
        for side in sides.values():
            side["material"] = args.substrate
            side["film"] = args.film
        if args.coated:
            sides["side1"]["coated"], sides["side2"]["coated"] = COATED_CHOICES[args.coated]

        return config.with_overrides(
            run={"command": args.command},
            geometry={
                "a_min": args.a_min,
                "a_max": args.a_max,
                "points": args.points,
                "spacing": args.spacing,
                "temperature": args.temperature,
            },
            graphene={"delta": args.delta},
            output={
                "path": args.output,
                "format": args.format,
                "trace": args.trace,
                "workers": args.workers,
            },
            **sides,
        )
    except ValidationError as exc:
        raise ConfigurationError(f"invalid configuration: {exc.errors()[0]['loc']}: {exc.errors()[0]['msg']}")
    except configparser.Error as exc:
        raise ConfigurationError(f"invalid configuration file: {exc}")


def run(config: RunConfig) -> int:
    """Execute a configured run, write its output and return the exit code."""
    try:
        grid = config.grid()
    except ValueError as exc:
        raise ConfigurationError(str(exc))
    logger.info("Running %s on %d points", config.command, len(grid))

    output = COMMANDS[config.command](config)
    settings = get_settings()
    text = write_table(
        output.rows,
        output.columns,
        output.metadata,
        path=config.output.path,
        fmt=config.output.format,
        digits=settings.csv_digits,
        index=output.index,
    )
    if not config.output.path:
        sys.stdout.write(text)

    if config.output.trace:
        traces = [t for row in output.rows for t in row.traces]
        if config.output.path:
            write_trace(f"{config.output.path}.trace.csv", traces, settings.csv_digits)
        else:
            logger.warning("--trace needs --output; %d traces not written", len(traces))

    for note in output.metadata.get("notes", []):
        logger.info(note)
    return output.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return run(load_config(args))
    except CGEError as exc:
        logger.error(exc.detail)
        return exc.exit_code
    except ValidationError as exc:
        logger.error("invalid input: %s", exc.errors()[0]["msg"])
        return ConfigurationError.exit_code


if __name__ == "__main__":
    sys.exit(main())
