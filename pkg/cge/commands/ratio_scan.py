"""ratio-scan: coated/uncoated pressure ratios between two plates."""
import logging
from dataclasses import dataclass
from functools import partial
from typing import Dict

from cge.commands.common import (
    CommandOutput,
    build_metadata,
    build_side,
    quadrature_config,
    quotient_error,
    run_rows,
)
from cge.exceptions import DegenerateScenarioError
from cge.schemas import PlateStack, PressureResult, QuadratureConfig, RunConfig, ScanRow, Scenario
from cge.services.lifshitz_engine import evaluate_pressure

logger = logging.getLogger(__name__)

COLUMNS = [
    "P", "P_g", "P_gg", "ratio_g", "ratio_gg",
    "P_err", "P_g_err", "P_gg_err", "ratio_g_err", "ratio_gg_err",
]


@dataclass(frozen=True)
class PlatePairs:
    """Bare and graphene-coated versions of both plates."""
    bare1: PlateStack
    bare2: PlateStack
    coated1: PlateStack
    coated2: PlateStack


def plate_pairs(config: RunConfig) -> PlatePairs:
    return PlatePairs(
        bare1=build_side(config.side1, config, coated=False),
        bare2=build_side(config.side2, config, coated=False),
        coated1=build_side(config.side1, config, coated=True),
        coated2=build_side(config.side2, config, coated=True),
    )


def plate_pressures(a: float, pairs: PlatePairs, temperature: float, cfg: QuadratureConfig) -> Dict[str, PressureResult]:
    """P (no coating), P_g (plate 1 coated) and P_gg (both coated) at separation a."""
    def evaluate(side1: PlateStack, side2: PlateStack) -> PressureResult:
        scenario = Scenario(separation=a, temperature=temperature, side1=side1, side2=side2)
        return evaluate_pressure(scenario, cfg, zero_temperature=(temperature == 0))

    return {
        "P": evaluate(pairs.bare1, pairs.bare2),
        "P_g": evaluate(pairs.coated1, pairs.bare2),
        "P_gg": evaluate(pairs.coated1, pairs.coated2),
    }


def traces_of(a: float, results: Dict[str, PressureResult]):
    return [
        {"a": a, "quantity": name, "terms": result.per_term_trace}
        for name, result in results.items()
        if result.per_term_trace
    ]


def _ratio_row(pairs: PlatePairs, temperature: float, cfg: QuadratureConfig, a: float) -> ScanRow:
    results = plate_pressures(a, pairs, temperature, cfg)
    p, pg, pgg = (results[k] for k in ("P", "P_g", "P_gg"))
    if p.pressure == 0:
        raise DegenerateScenarioError(f"vanishing uncoated pressure at a = {a:.4g} m")
    ratio_g = pg.pressure / p.pressure
    ratio_gg = pgg.pressure / p.pressure
    return ScanRow(
        a=a,
        values={
            "P": p.pressure,
            "P_g": pg.pressure,
            "P_gg": pgg.pressure,
            "ratio_g": ratio_g,
            "ratio_gg": ratio_gg,
        },
        errors={
            "P": p.estimated_error,
            "P_g": pg.estimated_error,
            "P_gg": pgg.estimated_error,
            "ratio_g": quotient_error(ratio_g, (pg.pressure, pg.estimated_error), (p.pressure, p.estimated_error)),
            "ratio_gg": quotient_error(ratio_gg, (pgg.pressure, pgg.estimated_error), (p.pressure, p.estimated_error)),
        },
        traces=traces_of(a, results),
    )


def run_ratio_scan(config: RunConfig) -> CommandOutput:
    """
    Pressures P, P_g, P_gg and the ratios P_g/P, P_gg/P over the separation grid.

    Args:
        config: run configuration; [side1]/[side2] give the plates, coatings
            are added by the command itself

    Returns:
        CommandOutput with one row per separation
    """
    pairs = plate_pairs(config)
    cfg = quadrature_config(config)
    temperature = config.geometry.temperature
    row = partial(_ratio_row, pairs, temperature, cfg)
    rows = run_rows(row, config.grid(), config.output.workers)
    logger.info("ratio-scan: %d rows, %d failed", len(rows), sum(1 for r in rows if r.error))
    return CommandOutput(rows=rows, columns=COLUMNS, metadata=build_metadata(config))
