"""Sphere-plate force gradient in the proximity force approximation.

The normalized gradient F'(a)/R equals -2 pi P(a) of the plate-plate
pressure between the plate and a half-space of the sphere material.
"""
import csv
import itertools
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from cge.exceptions import DegenerateScenarioError, InputFileError
from cge.schemas.common import QuadratureConfig
from cge.schemas.experiment import PFA_NOTE_RATIO, BandSpec, ModelBand, OverlayPoint, SphereExperiment
from cge.schemas.material import MaterialModel, OscillatorSet
from cge.schemas.stack import Film, PlateStack, Scenario
from cge.services.lifshitz_engine import evaluate_pressure
from cge.services.material_response import with_carrier_parameters, with_extrapolation

logger = logging.getLogger(__name__)

OVERLAY_COLUMNS = ("a_nm", "a_err_nm", "grad_Pa", "grad_err_Pa")


def sphere_scenario(a: float, exp: SphereExperiment) -> Scenario:
    """Plate-plate scenario equivalent to the sphere at separation a."""
    return Scenario(
        separation=a,
        temperature=exp.temperature,
        side1=exp.plate,
        side2=PlateStack(substrate=exp.sphere),
    )


def gradient_with_error(
    a: float,
    exp: SphereExperiment,
    cfg: QuadratureConfig,
    mode: str = "T",
) -> Tuple[float, float]:
    """Normalized gradient F'/R (Pa) and its estimated error at T (mode "T") or 0 K ("T0")."""
    if a / exp.radius > PFA_NOTE_RATIO:
        logger.warning(
            "a/R = %.3g exceeds %.2g; PFA relative error is about %.2g",
            a / exp.radius, PFA_NOTE_RATIO, 0.35 * a / exp.radius,
        )
    result = evaluate_pressure(sphere_scenario(a, exp), cfg, zero_temperature=(mode == "T0"))
    return -2.0 * np.pi * result.pressure, 2.0 * np.pi * result.estimated_error


def normalized_gradient(a: float, exp: SphereExperiment, cfg: QuadratureConfig, mode: str = "T") -> float:
    """
    F'(a)/R = -2 pi P(a).

    Args:
        a: separation, m
        exp: experiment description
        cfg: quadrature settings
        mode: "T" for the experiment temperature, "T0" for zero temperature

    Returns:
        Normalized gradient in Pa (positive for attraction)
    """
    return gradient_with_error(a, exp, cfg, mode)[0]


def thermal_correction(a: float, exp: SphereExperiment, cfg: QuadratureConfig) -> float:
    """Delta_T = F'/R at T minus F'/R at 0 K, in Pa."""
    return normalized_gradient(a, exp, cfg, "T") - normalized_gradient(a, exp, cfg, "T0")


def relative_thermal_correction(a: float, exp: SphereExperiment, cfg: QuadratureConfig) -> float:
    """
    delta_T = Delta_T / (F'/R at T).

    Raises:
        DegenerateScenarioError: if the gradient at T vanishes
    """
    gradient = normalized_gradient(a, exp, cfg, "T")
    if gradient == 0:
        raise DegenerateScenarioError(f"vanishing gradient at a = {a:.4g} m")
    return (gradient - normalized_gradient(a, exp, cfg, "T0")) / gradient


def relative_error_line(a: float, exp: SphereExperiment, cfg: QuadratureConfig) -> float:
    """Total experimental error relative to the gradient at T."""
    gradient = normalized_gradient(a, exp, cfg, "T")
    if gradient == 0:
        raise DegenerateScenarioError(f"vanishing gradient at a = {a:.4g} m")
    return exp.total_error / gradient


def _materials(exp: SphereExperiment) -> List[MaterialModel]:
    found = [exp.sphere, exp.plate.substrate]
    if exp.plate.film is not None:
        found.append(exp.plate.film.material)
    return found


def _has_carriers(model: MaterialModel) -> bool:
    return isinstance(model, OscillatorSet) and model.carriers is not None


def _vary(model: MaterialModel, extrapolation: str, omega_p: Optional[float], gamma: Optional[float]) -> MaterialModel:
    if _has_carriers(model):
        model = with_carrier_parameters(model, omega_p, gamma)
    return with_extrapolation(model, extrapolation)


def band_variant(
    exp: SphereExperiment,
    delta: float,
    extrapolation: str,
    omega_p: Optional[float],
    gamma: Optional[float] = None,
) -> SphereExperiment:
    """The experiment with one choice of gap, low-frequency extrapolation and carrier parameters."""
    plate = exp.plate
    coating = plate.coating.model_copy(update={"delta": delta}) if plate.coating is not None else None
    film = None
    if plate.film is not None:
        film = Film(material=_vary(plate.film.material, extrapolation, omega_p, gamma), thickness=plate.film.thickness)
    new_plate = PlateStack(
        coating=coating,
        film=film,
        substrate=_vary(plate.substrate, extrapolation, omega_p, gamma),
        label=plate.label,
    )
    return exp.model_copy(update={"plate": new_plate, "sphere": _vary(exp.sphere, extrapolation, omega_p, gamma)})


def band_variants(exp: SphereExperiment, band: BandSpec) -> Tuple[List[SphereExperiment], SphereExperiment]:
    """Corners of the variant box and the central variant."""
    carriers = any(_has_carriers(m) for m in _materials(exp))
    plasma_values: Sequence[Optional[float]] = band.si_plasma_range if carriers else (None,)
    deltas = (0.0, band.delta_max) if exp.plate.coating is not None else (0.0,)
    gamma = band.si_carrier_gamma if carriers else None

    corners = []
    seen = set()
    for delta, extrapolation, omega_p in itertools.product(deltas, band.metal_extrapolations, plasma_values):
        key = (delta, extrapolation, omega_p)
        if key not in seen:
            seen.add(key)
            corners.append(band_variant(exp, delta, extrapolation, omega_p, gamma))
    central = band_variant(exp, 0.0, "drude", band.nominal_plasma if carriers else None, gamma)
    return corners, central


def model_band(
    a_grid: Sequence[float],
    exp: SphereExperiment,
    band: BandSpec,
    cfg: QuadratureConfig,
    mode: str = "T",
) -> ModelBand:
    """
    Pointwise (min, max, central) of the normalized gradient over the variant box.

    The box spans the gap (0 or delta_max, coated plates only), the metal
    extrapolations and the carrier plasma frequency endpoints (only when a
    material has free carriers). The central variant is gapless, Drude and
    at the nominal plasma frequency.
    """
    corners, central = band_variants(exp, band)
    lower, upper, middle = [], [], []
    for a in a_grid:
        values = [normalized_gradient(a, variant, cfg, mode) for variant in corners]
        centre = normalized_gradient(a, central, cfg, mode)
        lower.append(min(values + [centre]))
        upper.append(max(values + [centre]))
        middle.append(centre)
    return ModelBand(
        separations=tuple(a_grid),
        lower=tuple(lower),
        upper=tuple(upper),
        central=tuple(middle),
        variants=len(corners) + 1,
    )


def find_crossing(a_grid: Sequence[float], values: Sequence[float], level: float) -> Optional[float]:
    """
    First separation where the sampled curve crosses ``level``.

    The bracketing interval is found on the samples; the root is then
    located with brentq on the piecewise-linear interpolant.

    Returns:
        The crossing separation, or None if the curve never crosses
    """
    a = np.asarray(a_grid, dtype=float)
    shifted = np.asarray(values, dtype=float) - level
    for i in range(len(a) - 1):
        if shifted[i] == 0:
            return float(a[i])
        if shifted[i] * shifted[i + 1] < 0:
            lo, hi = a[i], a[i + 1]
            return float(brentq(lambda x: np.interp(x, a, shifted), lo, hi))
    if len(a) and shifted[-1] == 0:
        return float(a[-1])
    return None


def read_overlay(path) -> List[OverlayPoint]:
    """
    Read measured gradients from a CSV with columns a_nm, a_err_nm, grad_Pa, grad_err_Pa.

    Lines starting with '#' are skipped.

    Raises:
        InputFileError: naming the file and row of the first bad entry
    """
    path = Path(path)
    try:
        handle = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise InputFileError(f"{path}: {exc}")

    points: List[OverlayPoint] = []
    with handle:
        lines = (line for line in handle if line.strip() and not line.lstrip().startswith("#"))
        reader = csv.DictReader(lines)
        missing = [c for c in OVERLAY_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise InputFileError(f"{path}: missing columns {', '.join(missing)}")
        for row_number, row in enumerate(reader, start=1):
            try:
                points.append(OverlayPoint(
                    a_nm=float(row["a_nm"]),
                    a_err_nm=float(row["a_err_nm"]),
                    grad_pa=float(row["grad_Pa"]),
                    grad_err_pa=float(row["grad_err_Pa"]),
                ))
            except (TypeError, ValueError) as exc:
                raise InputFileError(f"{path}: bad data row {row_number}: {exc}")
    if not points:
        raise InputFileError(f"{path}: no data rows")
    return points


def overlay_residuals(
    points: Iterable[OverlayPoint],
    lower: Sequence[float],
    upper: Sequence[float],
) -> List[float]:
    """
    Distance from each measurement to the band [lower, upper], in units of its error.

    A measurement inside the band has distance 0; one below the band is
    negative, one above it positive.
    """
    points = list(points)
    if not len(points) == len(lower) == len(upper):
        raise ValueError("one band edge pair per overlay point is required")
    distances = []
    for point, low, high in zip(points, lower, upper):
        if point.grad_pa < low:
            gap = point.grad_pa - low
        elif point.grad_pa > high:
            gap = point.grad_pa - high
        else:
            gap = 0.0
        distances.append(gap / point.grad_err_pa)
    return distances


def band_ordering_violations(band_t: ModelBand, band_0: ModelBand) -> List[float]:
    """
    Separations where the 0 K envelope is narrower than the envelope at T
    or does not lie below it.
    """
    bad = []
    for a, low_t, high_t, low_0, high_0 in zip(
        band_t.separations, band_t.lower, band_t.upper, band_0.lower, band_0.upper
    ):
        if high_0 - low_0 < high_t - low_t or low_0 > low_t or high_0 > high_t:
            bad.append(a)
    return bad
