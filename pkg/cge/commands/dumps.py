"""Debug tables: permittivity, reflection coefficients and polarization grids."""
import logging

import numpy as np

from cge.commands.common import CommandOutput, build_material, build_metadata, build_side, graphene_sheet
from cge.schemas import DimensionlessContext, RunConfig, ScanRow, SpectralPoint
from cge.services.graphene_polarization import polarization_grid
from cge.services.material_response import eps_imaginary, zero_frequency_class
from cge.services.reflection import r_stack

logger = logging.getLogger(__name__)

DEFAULT_SEPARATION = 100e-9


def _separation(config: RunConfig) -> float:
    return config.geometry.a_min or DEFAULT_SEPARATION


def _y_grid(zeta: float, config: RunConfig) -> np.ndarray:
    steps = np.linspace(0.0, config.dump.y_max, config.dump.points + 1)[1:]
    return zeta + steps


def run_dump_eps(config: RunConfig) -> CommandOutput:
    """eps(i xi) on a log grid of photon energies (eV) for [dump] material or side 1."""
    name = config.dump.material or config.side1.material
    model = build_material(name, config.side1.extrapolation)
    energies = np.geomspace(config.dump.energy_min, config.dump.energy_max, config.dump.points)
    eps = np.atleast_1d(eps_imaginary(model, energies))
    rows = [ScanRow(a=float(e), values={"eps": float(v)}) for e, v in zip(energies, eps)]
    cls = zero_frequency_class(model)
    metadata = build_metadata(config, [f"{name}: zero-frequency class {cls.model_dump()}"])
    return CommandOutput(rows=rows, columns=["eps"], metadata=metadata, index="xi_eV")


def run_dump_reflection(config: RunConfig) -> CommandOutput:
    """r_tm, r_te of the side-1 stack for each [dump] zeta over a y grid."""
    stack = build_side(config.side1, config)
    a = _separation(config)
    ctx = DimensionlessContext.build(a, config.geometry.temperature)
    rows = []
    for zeta in config.dump.zetas:
        y = _y_grid(zeta, config)
        pair = r_stack(SpectralPoint(zeta=np.full(y.shape, zeta), y=y), stack, ctx)
        rows.extend(
            ScanRow(a=zeta, values={"y": float(yv), "r_tm": float(tm), "r_te": float(te)})
            for yv, tm, te in zip(y, pair.r_tm, pair.r_te)
        )
    return CommandOutput(rows=rows, columns=["y", "r_tm", "r_te"], metadata=build_metadata(config), index="zeta")


def run_dump_polarization(config: RunConfig) -> CommandOutput:
    """pi00 and pi_combo of the configured sheet on the [dump] (zeta, y) grid."""
    sheet = graphene_sheet(config)
    a = _separation(config)
    ctx = DimensionlessContext.build(a, config.geometry.temperature, sheet)
    ys = _y_grid(0.0, config)
    rows = [
        ScanRow(a=zeta, values={"y": y, "pi00": pi00, "pi_combo": combo})
        for zeta, y, pi00, combo in polarization_grid(config.dump.zetas, ys, ctx, sheet)
    ]
    return CommandOutput(rows=rows, columns=["y", "pi00", "pi_combo"], metadata=build_metadata(config), index="zeta")
