"""pressure-scan: absolute pressures of the configured plate pairing."""
import logging
from functools import partial

from cge.commands.common import CommandOutput, build_metadata, quadrature_config, run_rows
from cge.commands.ratio_scan import PlatePairs, plate_pairs, plate_pressures, traces_of
from cge.schemas import QuadratureConfig, RunConfig, ScanRow
from cge.utils.units import ideal_metal_pressure_t0

logger = logging.getLogger(__name__)

COLUMNS = ["P_abs", "P_g_abs", "P_gg_abs", "P_ideal_T0_abs", "P_abs_err", "P_g_abs_err", "P_gg_abs_err"]


def _pressure_row(pairs: PlatePairs, temperature: float, cfg: QuadratureConfig, a: float) -> ScanRow:
    results = plate_pressures(a, pairs, temperature, cfg)
    values = {f"{name}_abs": abs(r.pressure) for name, r in results.items()}
    values["P_ideal_T0_abs"] = abs(ideal_metal_pressure_t0(a))
    errors = {f"{name}_abs": r.estimated_error for name, r in results.items()}
    return ScanRow(a=a, values=values, errors=errors, traces=traces_of(a, results))


def run_pressure_scan(config: RunConfig) -> CommandOutput:
    """
    |P|, |P_g|, |P_gg| and the ideal-metal zero-temperature reference over the grid.

    Returns:
        CommandOutput with one row per separation
    """
    pairs = plate_pairs(config)
    cfg = quadrature_config(config)
    row = partial(_pressure_row, pairs, config.geometry.temperature, cfg)
    rows = run_rows(row, config.grid(), config.output.workers)
    logger.info("pressure-scan: %d rows, %d failed", len(rows), sum(1 for r in rows if r.error))
    return CommandOutput(rows=rows, columns=COLUMNS, metadata=build_metadata(config))
