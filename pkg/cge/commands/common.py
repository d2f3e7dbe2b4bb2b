"""Shared plumbing of the CLI commands: building engine inputs from a RunConfig,
running rows in a worker pool and collecting metadata."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Sequence

from cge.config import get_settings
from cge.exceptions import CGEError, ConfigurationError
from cge.schemas import (
    BandSpec,
    Film,
    GrapheneSheet,
    MaterialModel,
    PlateStack,
    QuadratureConfig,
    RunConfig,
    ScanRow,
    SphereExperiment,
)
from cge.schemas.run_config import SideSection
from cge.services.material_files import load_material, material_provenance
from cge.services.material_response import with_carrier_parameters, with_extrapolation
from cge.utils.units import C_LIGHT

logger = logging.getLogger(__name__)


@dataclass
class CommandOutput:
    """Rows and metadata of one command run."""
    rows: List[ScanRow]
    columns: List[str]
    metadata: Dict[str, Any]
    index: str = "a"
    notes: List[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return max((row.exit_code for row in self.rows), default=0)


def build_material(name: str, extrapolation: Optional[str] = None, side: Optional[SideSection] = None) -> MaterialModel:
    """
    Load a registry material and apply the side's free-carrier settings.

    The carrier plasma frequency and relaxation rate of ``side`` replace the
    file values before the optional Drude/plasma switch.
    """
    model = load_material(name)
    gamma = None
    if side is not None and (side.carrier_omega_p is not None or side.carrier_gamma is not None):
        model = with_carrier_parameters(model, side.carrier_omega_p, side.carrier_gamma)
        gamma = side.carrier_gamma
    if extrapolation:
        model = with_extrapolation(model, extrapolation, gamma)
    return model


def parse_film(spec: str, extrapolation: Optional[str] = None) -> Film:
    """
    Parse ``NAME:THICKNESS`` (thickness in m, or with an nm/um suffix).

    Raises:
        ConfigurationError: on a malformed spec or a non-positive thickness
    """
    name, sep, thickness = spec.partition(":")
    if not sep or not name:
        raise ConfigurationError(f"film must be NAME:THICKNESS, got {spec!r}")
    scale = 1.0
    text = thickness.strip().lower()
    for suffix, factor in (("nm", 1e-9), ("um", 1e-6), ("m", 1.0)):
        if text.endswith(suffix):
            text, scale = text[: -len(suffix)], factor
            break
    try:
        value = float(text) * scale
    except ValueError:
        raise ConfigurationError(f"bad film thickness in {spec!r}")
    if not value > 0:
        raise ConfigurationError(f"film thickness must be positive, got {spec!r}")
    return Film(material=build_material(name, extrapolation), thickness=value)


def graphene_sheet(config: RunConfig) -> GrapheneSheet:
    return GrapheneSheet(delta=config.graphene.delta, v_f_ratio=config.graphene.v_f / C_LIGHT)


def build_side(side: SideSection, config: RunConfig, coated: Optional[bool] = None) -> PlateStack:
    """Plate stack of one side; ``coated`` overrides the side's own flag."""
    coated = side.coated if coated is None else coated
    return PlateStack(
        coating=graphene_sheet(config) if coated else None,
        film=parse_film(side.film, side.extrapolation) if side.film else None,
        substrate=build_material(side.material, side.extrapolation, side),
    )


def quadrature_config(config: RunConfig, trace: Optional[bool] = None) -> QuadratureConfig:
    """Engine settings with the [quadrature] overrides of the run."""
    overrides = config.quadrature.model_dump()
    overrides["trace"] = config.output.trace if trace is None else trace
    return QuadratureConfig.from_settings(get_settings(), **overrides)


def sphere_experiment(config: RunConfig) -> SphereExperiment:
    """
    The sphere-plate experiment: side1 is the plate.

    Raises:
        ConfigurationError: if the temperature is not positive
    """
    temperature = config.geometry.temperature
    if not temperature > 0:
        raise ConfigurationError(f"sphere-plate commands need a positive temperature, got {temperature:g} K")
    return SphereExperiment(
        radius=config.sphere.radius,
        plate=build_side(config.side1, config),
        sphere=build_material(config.sphere.material, config.side1.extrapolation),
        temperature=temperature,
        total_error=config.sphere.total_error,
    )


def band_spec(config: RunConfig) -> BandSpec:
    band = config.band
    return BandSpec(
        delta_max=band.delta_max,
        metal_extrapolations=band.extrapolations,
        si_plasma_range=(band.si_plasma_min, band.si_plasma_max),
        si_plasma_nominal=band.si_plasma_nominal,
        si_carrier_gamma=band.si_carrier_gamma,
    )


def quotient_error(quotient: float, *parts) -> float:
    """Absolute error of a quotient from the (value, error) pairs of numerator and denominator."""
    return abs(quotient) * sum(e / abs(v) for v, e in parts if v)


def _safe_row(row_func: Callable[[float], ScanRow], a: float) -> ScanRow:
    try:
        return row_func(a)
    except CGEError as exc:
        logger.warning("Row a=%.4g failed: %s", a, exc.detail)
        return ScanRow(a=a, error=exc.detail, exit_code=exc.exit_code)


def run_rows(row_func: Callable[[float], ScanRow], grid: Sequence[float], workers: Optional[int] = None) -> List[ScanRow]:
    """
    Evaluate one row per grid value, in a process pool when workers > 1.

    Rows come back in grid order. Engine errors are recorded in the row's
    ``error`` column instead of aborting the scan.
    """
    workers = workers or get_settings().workers
    job = partial(_safe_row, row_func)
    grid = [float(a) for a in grid]
    if workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, grid))
    return [job(a) for a in grid]


def material_names(config: RunConfig) -> List[str]:
    """Registry names used by the run."""
    names = [config.side1.material, config.side2.material]
    for side in (config.side1, config.side2):
        if side.film:
            names.append(side.film.partition(":")[0])
    if config.command in ("gradient-scan", "thermal-correction", "band-compare"):
        names.append(config.sphere.material)
    if config.dump.material:
        names.append(config.dump.material)
    return sorted(set(names))


def build_metadata(config: RunConfig, notes: Sequence[str] = ()) -> Dict[str, Any]:
    """Config echo, engine version, material provenance and notes."""
    settings = get_settings()
    materials = {}
    all_notes = list(notes)
    for name in material_names(config):
        prov = material_provenance(name)
        materials[name] = {"sha256": prov.sha256, "label": prov.label, "source": prov.source, "path": prov.path}
        if prov.parameter_sensitive:
            all_notes.append(f"{name}: results are parameter-sensitive (free-carrier defaults)")
    return {
        "command": config.command,
        "engine_version": settings.engine_version,
        "config": config.model_dump(),
        "materials": materials,
        "notes": all_notes,
    }

