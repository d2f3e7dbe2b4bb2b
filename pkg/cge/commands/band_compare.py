"""band-compare: model-uncertainty bands of the gradient, optionally against measured data."""
import logging
from functools import partial
from typing import Dict, List, Optional

from cge.commands.common import (
    CommandOutput,
    band_spec,
    build_metadata,
    quadrature_config,
    run_rows,
    sphere_experiment,
)
from cge.schemas import BandSpec, ModelBand, OverlayPoint, QuadratureConfig, RunConfig, ScanRow, SphereExperiment
from cge.services.sphere_plate import band_ordering_violations, model_band, overlay_residuals, read_overlay

logger = logging.getLogger(__name__)

COLUMNS = ["band_T_min", "band_T_max", "central_T", "band_T0_min", "band_T0_max", "central_T0"]
OVERLAY_COLUMNS = ["grad_exp", "grad_exp_err", "residual_T", "residual_T0", "inside_T", "inside_T0"]


def _band_row(
    exp: SphereExperiment,
    band: BandSpec,
    cfg: QuadratureConfig,
    overlay: Optional[Dict[float, OverlayPoint]],
    a: float,
) -> ScanRow:
    at_t = model_band([a], exp, band, cfg, "T")
    at_0 = model_band([a], exp, band, cfg, "T0")
    values = {
        "band_T_min": at_t.lower[0],
        "band_T_max": at_t.upper[0],
        "central_T": at_t.central[0],
        "band_T0_min": at_0.lower[0],
        "band_T0_max": at_0.upper[0],
        "central_T0": at_0.central[0],
    }
    flags = {}
    if overlay is not None:
        point = overlay[a]
        values["grad_exp"] = point.grad_pa
        values["grad_exp_err"] = point.grad_err_pa
        (values["residual_T"],) = overlay_residuals([point], at_t.lower, at_t.upper)
        (values["residual_T0"],) = overlay_residuals([point], at_0.lower, at_0.upper)
        flags["inside_T"] = values["residual_T"] == 0.0
        flags["inside_T0"] = values["residual_T0"] == 0.0
    return ScanRow(a=a, values=values, flags=flags)


def _envelopes(rows: List[ScanRow]):
    good = [r for r in rows if not r.error]

    def envelope(suffix: str) -> ModelBand:
        return ModelBand(
            separations=tuple(r.a for r in good),
            lower=tuple(r.values[f"band_{suffix}_min"] for r in good),
            upper=tuple(r.values[f"band_{suffix}_max"] for r in good),
            central=tuple(r.values[f"central_{suffix}"] for r in good),
            variants=0,
        )

    return envelope("T"), envelope("T0")


def run_band_compare(config: RunConfig) -> CommandOutput:
    """
    Band min/max at T and at 0 K plus the central variant.

    With [sphere] overlay set, the grid becomes the measured separations and
    each point gets its distance to both bands in units of its error bar.
    """
    exp = sphere_experiment(config)
    band = band_spec(config)
    cfg = quadrature_config(config)

    overlay = None
    columns = list(COLUMNS)
    grid = config.grid()
    if config.sphere.overlay:
        points = read_overlay(config.sphere.overlay)
        overlay = {p.separation: p for p in points}
        grid = [p.separation for p in points]
        columns += OVERLAY_COLUMNS
        logger.info("Comparing against %d measured points from %s", len(points), config.sphere.overlay)

    rows = run_rows(partial(_band_row, exp, band, cfg, overlay), grid, config.output.workers)

    notes = []
    violations = band_ordering_violations(*_envelopes(rows))
    if violations:
        note = (
            f"0 K band is not wider than and below the {exp.temperature:g} K band at "
            f"{len(violations)} separations, first at a = {violations[0] * 1e9:.1f} nm"
        )
        logger.warning(note)
        notes.append(note)
    return CommandOutput(rows=rows, columns=columns, metadata=build_metadata(config, notes))
