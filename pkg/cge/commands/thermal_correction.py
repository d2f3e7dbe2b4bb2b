"""thermal-correction: Delta_T for the plate, for other film thicknesses and for
the film taken as a half-space."""
import logging
from functools import partial
from typing import List, Tuple

from cge.commands.common import CommandOutput, build_metadata, quadrature_config, run_rows, sphere_experiment
from cge.schemas import Film, QuadratureConfig, RunConfig, ScanRow, SphereExperiment
from cge.services.sphere_plate import thermal_correction

logger = logging.getLogger(__name__)

HALF_SPACE = "delta_T_halfspace"


def thickness_column(thickness: float) -> str:
    return f"delta_T_D{thickness * 1e9:g}nm"


def plate_variants(exp: SphereExperiment, thicknesses) -> List[Tuple[str, SphereExperiment]]:
    """(column, experiment) pairs: the plate itself, each extra thickness and the half-space film."""
    variants = [("delta_T", exp)]
    film = exp.plate.film
    if film is None:
        return variants
    for thickness in thicknesses:
        plate = exp.plate.model_copy(update={"film": Film(material=film.material, thickness=thickness)})
        variants.append((thickness_column(thickness), exp.model_copy(update={"plate": plate})))
    half_space = exp.plate.model_copy(update={"film": None, "substrate": film.material})
    variants.append((HALF_SPACE, exp.model_copy(update={"plate": half_space})))
    return variants


def _correction_row(variants, cfg: QuadratureConfig, a: float) -> ScanRow:
    return ScanRow(a=a, values={name: thermal_correction(a, variant, cfg) for name, variant in variants})


def run_thermal_correction(config: RunConfig) -> CommandOutput:
    """
    Delta_T(a) of the configured plate; with a film also for every thickness in
    [sphere] thicknesses and for the film material as a half-space.
    """
    exp = sphere_experiment(config)
    cfg = quadrature_config(config)
    variants = plate_variants(exp, config.sphere.thicknesses)
    rows = run_rows(partial(_correction_row, variants, cfg), config.grid(), config.output.workers)
    columns = [name for name, _ in variants]
    return CommandOutput(rows=rows, columns=columns, metadata=build_metadata(config))
