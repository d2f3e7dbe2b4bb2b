"""gradient-scan: sphere-plate gradient, thermal correction and error lines."""
import logging
from functools import partial

from cge.commands.common import CommandOutput, build_metadata, quadrature_config, run_rows, sphere_experiment
from cge.exceptions import DegenerateScenarioError
from cge.schemas import QuadratureConfig, RunConfig, ScanRow, SphereExperiment
from cge.services.sphere_plate import find_crossing, gradient_with_error

logger = logging.getLogger(__name__)

COLUMNS = [
    "grad_T", "grad_T0", "delta_T", "rel_delta_T", "error_line", "rel_error_line", "exceeds",
    "grad_T_err", "grad_T0_err", "delta_T_err",
]


def _gradient_row(exp: SphereExperiment, cfg: QuadratureConfig, a: float) -> ScanRow:
    grad_t, err_t = gradient_with_error(a, exp, cfg, "T")
    grad_0, err_0 = gradient_with_error(a, exp, cfg, "T0")
    if grad_t == 0:
        raise DegenerateScenarioError(f"vanishing gradient at a = {a:.4g} m")
    delta = grad_t - grad_0
    return ScanRow(
        a=a,
        values={
            "grad_T": grad_t,
            "grad_T0": grad_0,
            "delta_T": delta,
            "rel_delta_T": delta / grad_t,
            "error_line": exp.total_error,
            "rel_error_line": exp.total_error / grad_t,
        },
        errors={"grad_T": err_t, "grad_T0": err_0, "delta_T": err_t + err_0},
        flags={"exceeds": abs(delta) > exp.total_error},
    )


def run_gradient_and_correction(config: RunConfig) -> CommandOutput:
    """
    F'/R at T and at 0 K, Delta_T, delta_T and the experimental error lines.

    The separations where Delta_T crosses the total error and where delta_T
    crosses the relative error line are reported in the metadata notes.
    """
    exp = sphere_experiment(config)
    cfg = quadrature_config(config)
    rows = run_rows(partial(_gradient_row, exp, cfg), config.grid(), config.output.workers)

    good = [r for r in rows if r.error is None]
    notes = []
    crossing = None
    if len(good) > 1:
        grid = [r.a for r in good]
        crossing = find_crossing(grid, [r.values["delta_T"] for r in good], exp.total_error)
        rel_crossing = find_crossing(
            grid, [r.values["rel_delta_T"] - r.values["rel_error_line"] for r in good], 0.0
        )
        if crossing is not None:
            notes.append(f"Delta_T crosses {exp.total_error:g} Pa at a = {crossing * 1e9:.1f} nm")
            logger.info("Thermal correction crosses the total error at %.1f nm", crossing * 1e9)
        if rel_crossing is not None:
            notes.append(f"delta_T crosses the relative error line at a = {rel_crossing * 1e9:.1f} nm")
    metadata = build_metadata(config, notes)
    metadata["crossing_a"] = crossing
    return CommandOutput(rows=rows, columns=COLUMNS, metadata=metadata, notes=notes)
