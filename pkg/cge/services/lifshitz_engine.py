"""Lifshitz pressure between two planar stacks.

Finite temperature:
    P = -k_B T / (8 pi a^3) sum'_l int_{zeta_l}^inf y^2 sum_pol r1 r2 / (e^y - r1 r2) dy
with zeta_l = tau l and the l = 0 term halved.

Zero temperature:
    P = -hbar c / (32 pi^2 a^4) int_0^inf d zeta int_zeta^inf dy (same integrand).
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from cge.exceptions import ConvergenceError, DomainError, ModeSingularityError
from cge.schemas.common import IntegratorSpec, QuadratureConfig, SpectralPoint
from cge.schemas.graphene import DimensionlessContext
from cge.schemas.results import PressureResult
from cge.schemas.stack import Scenario
from cge.services.reflection import r_stack
from cge.utils.cache import build_cache_key, cached
from cge.utils.quadrature import integrate_rows
from cge.utils.units import HBAR_C, K_B

logger = logging.getLogger(__name__)

# Consecutive negligible terms required to stop the Matsubara sum
STOP_RUN = 3


def integrand(
    point: SpectralPoint,
    scenario: Scenario,
    ctx: DimensionlessContext,
    polarization_rel_tol: float = 1e-10,
) -> np.ndarray:
    """
    y^2 sum_pol r1 r2 e^-y / (1 - r1 r2 e^-y) on a grid of (zeta, y).

    Raises:
        ModeSingularityError: if 1 - r1 r2 e^-y <= 0 anywhere
    """
    r1 = r_stack(point, scenario.side1, ctx, polarization_rel_tol)
    if scenario.side2 == scenario.side1:
        r2 = r1
    else:
        r2 = r_stack(point, scenario.side2, ctx, polarization_rel_tol)

    y = np.broadcast_to(point.y, np.shape(r1.r_tm))
    decay = np.exp(-y)
    total = np.zeros(y.shape)
    for a, b in ((r1.r_tm, r2.r_tm), (r1.r_te, r2.r_te)):
        product = a * b * decay
        denominator = 1.0 - product
        if np.any(denominator <= 0):
            raise ModeSingularityError(
                f"1 - r1 r2 e^-y <= 0 at separation {ctx.separation:.4g} m"
            )
        total += product / denominator
    return y * y * total


def _integrate_y(
    zetas: np.ndarray,
    scenario: Scenario,
    ctx: DimensionlessContext,
    cfg: QuadratureConfig,
    spec: IntegratorSpec,
):
    """Row integrals int_{zeta}^inf integrand dy for each zeta of ``zetas``."""
    def rows_integrand(rows: np.ndarray, t: np.ndarray) -> np.ndarray:
        zeta = zetas[rows][:, None]
        point = SpectralPoint(zeta=np.broadcast_to(zeta, (rows.size, t.size)), y=zeta + t[None, :])
        return integrand(point, scenario, ctx, cfg.polarization_rel_tol)

    return integrate_rows(
        rows_integrand,
        zetas.size,
        rel_tol=cfg.rel_tol,
        first_width=spec.first_width,
        growth=spec.growth,
        order=spec.order,
        max_order=spec.max_order,
        min_extent=spec.min_extent,
        max_panels=spec.max_panels,
    )


def _thermal_prefactor(scenario: Scenario) -> float:
    return -K_B * scenario.temperature / (8.0 * math.pi * scenario.separation ** 3)


def _check_temperature(scenario: Scenario) -> DimensionlessContext:
    if scenario.temperature <= 0:
        raise DomainError("the Matsubara sum requires T > 0; use pressure_T0")
    return DimensionlessContext.build(scenario.separation, scenario.temperature)


def matsubara_terms(
    ls: Sequence[int],
    scenario: Scenario,
    cfg: QuadratureConfig,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pressure contributions (Pa) and quadrature error estimates of the terms ``ls``.

    The l = 0 term carries its weight 1/2.
    """
    ctx = _check_temperature(scenario)
    ls = np.asarray(ls, dtype=int)
    result = _integrate_y(ctx.tau * ls.astype(float), scenario, ctx, cfg, cfg.y_integrator)
    weights = np.where(ls == 0, 0.5, 1.0) * _thermal_prefactor(scenario)
    return weights * result.value, np.abs(weights) * result.error


def matsubara_term(l: int, scenario: Scenario, cfg: QuadratureConfig) -> float:
    """
    Contribution of the Matsubara frequency zeta_l to the pressure, in Pa.

    Raises:
        DomainError: for l < 0 or T <= 0
    """
    if l < 0:
        raise DomainError("Matsubara index must be non-negative")
    values, _ = matsubara_terms([l], scenario, cfg)
    return float(values[0])


def _blocks(block: int, limit: int):
    yield [0]
    start = 1
    while start < limit:
        stop = min(start + block, limit)
        yield list(range(start, stop))
        start = stop


def pressure(scenario: Scenario, cfg: Optional[QuadratureConfig] = None) -> PressureResult:
    """
    Finite-temperature pressure by the Matsubara sum.

    Terms are evaluated in blocks and summed in order of l. The sum stops
    after STOP_RUN consecutive terms below rel_tol times the partial sum
    (or below abs_tol). A geometric estimate of the remaining tail is added
    to ``estimated_error``, not to the pressure.

    Raises:
        DomainError: for T <= 0
        ConvergenceError: if max_matsubara terms do not converge; carries the
            partial PressureResult
    """
    cfg = cfg or QuadratureConfig()
    _check_temperature(scenario)

    partial = 0.0
    error = 0.0
    used = 0
    run = 0
    trace: List[Tuple[int, float]] = []
    last: List[float] = []
    converged = False

    for ls in _blocks(cfg.matsubara_block, cfg.max_matsubara):
        values, errors = matsubara_terms(ls, scenario, cfg)
        for l, value, err in zip(ls, values, errors):
            partial += value
            error += err
            used += 1
            last = (last + [abs(value)])[-2:]
            if cfg.trace:
                trace.append((l, float(value)))
            if abs(value) <= max(cfg.rel_tol * abs(partial), cfg.abs_tol):
                run += 1
            else:
                run = 0
            if run >= STOP_RUN:
                converged = True
                break
        if converged:
            break

    result = PressureResult(
        pressure=partial,
        matsubara_terms_used=used,
        estimated_error=error,
        per_term_trace=tuple(trace) if cfg.trace else None,
    )
    if not converged:
        raise ConvergenceError(
            f"Matsubara sum not converged after {used} terms at a = {scenario.separation:.4g} m",
            partial=result,
        )

    if len(last) == 2 and last[0] > 0:
        q = min(last[1] / last[0], 0.99)
        tail = q / (1.0 - q) * last[1]
    else:
        tail = last[-1] if last else 0.0
    result = result.model_copy(update={"estimated_error": error + tail})
    logger.debug(
        "P(a=%.4g m, T=%g K) = %.9e Pa from %d terms, error %.2e",
        scenario.separation, scenario.temperature, partial, used, result.estimated_error,
    )
    return result


def pressure_T0(scenario: Scenario, cfg: Optional[QuadratureConfig] = None) -> PressureResult:
    """
    Zero-temperature pressure, -hbar c / (32 pi^2 a^4) int d zeta int dy (...).

    The outer zeta integral runs on geometric panels; each of its nodes
    carries a full-tolerance y integral. Graphene uses the
    temperature-independent tensor. The temperature of ``scenario`` is ignored.
    """
    cfg = cfg or QuadratureConfig()
    ctx = DimensionlessContext.build(scenario.separation, 0.0)
    inner_error = [0.0]

    def outer(rows: np.ndarray, zetas: np.ndarray) -> np.ndarray:
        inner = _integrate_y(zetas, scenario, ctx, cfg, cfg.y_integrator)
        inner_error[0] = max(inner_error[0], float(np.max(inner.error / np.maximum(np.abs(inner.value), 1e-300))))
        return np.broadcast_to(inner.value, (rows.size, zetas.size))

    spec = cfg.zeta_integrator
    result = integrate_rows(
        outer, 1,
        rel_tol=cfg.rel_tol,
        first_width=spec.first_width,
        growth=spec.growth,
        order=spec.order,
        max_order=spec.max_order,
        min_extent=spec.min_extent,
        max_panels=spec.max_panels,
    )
    prefactor = -HBAR_C / (32.0 * math.pi ** 2 * scenario.separation ** 4)
    value = prefactor * float(result.value[0])
    error = abs(prefactor) * float(result.error[0]) + abs(value) * inner_error[0]
    logger.debug("P_T0(a=%.4g m) = %.9e Pa, error %.2e", scenario.separation, value, error)
    return PressureResult(pressure=value, matsubara_terms_used=0, estimated_error=error)


@cached(
    "pressure",
    key_builder=lambda scenario, cfg, zero_temperature=False: build_cache_key(
        "pressure", scenario=scenario, cfg=cfg, t0=zero_temperature
    ),
)
def evaluate_pressure(scenario: Scenario, cfg: QuadratureConfig, zero_temperature: bool = False) -> PressureResult:
    """Cached pressure at T (``zero_temperature`` False) or at T = 0."""
    if zero_temperature:
        return pressure_T0(scenario, cfg)
    return pressure(scenario, cfg)
