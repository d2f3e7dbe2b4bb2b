"""Reflection coefficients of bare, graphene-coated and film-covered plates.

Every formula is written with 1/eps and k/eps, so an infinite permittivity
(ideal conductor, or a conductor at zero frequency) is handled exactly.
"""
import logging
from typing import Optional

import numpy as np

from cge.exceptions import ConfigurationError, SingularPointError
from cge.schemas.common import SpectralPoint
from cge.schemas.graphene import DimensionlessContext, GrapheneSheet, PolarizationComponents
from cge.schemas.material import MaterialModel
from cge.schemas.stack import LayerResponse, PlateStack, ReflectionPair
from cge.services.graphene_polarization import polarization_continuous, polarization_zero
from cge.services.material_response import imaginary_axis_response

logger = logging.getLogger(__name__)


def _layer_from_eps(point: SpectralPoint, eps) -> LayerResponse:
    eps = np.asarray(eps, dtype=float)
    with np.errstate(divide="ignore"):
        inv_eps = np.where(np.isinf(eps), 0.0, 1.0 / eps)
    with np.errstate(invalid="ignore"):
        kappa2 = np.where(np.isinf(eps) & (point.zeta > 0), np.inf, (eps - 1.0) * point.zeta ** 2)
    kappa2 = np.where(np.isnan(kappa2), 0.0, kappa2)
    return LayerResponse(inv_eps=inv_eps, kappa2=kappa2)


def _k(y: np.ndarray, layer: LayerResponse) -> np.ndarray:
    return np.sqrt(y * y + layer.kappa2)


def _k_over_eps(k: np.ndarray, layer: LayerResponse) -> np.ndarray:
    with np.errstate(invalid="ignore"):
        return np.where(layer.inv_eps == 0, 0.0, k * layer.inv_eps)


def _ratio(num: np.ndarray, den: np.ndarray, default: float) -> np.ndarray:
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(den == 0, default, num / np.where(den == 0, 1.0, den))


def k_n(point: SpectralPoint, eps):
    """k = sqrt(y^2 + (eps - 1) zeta^2) for the layer permittivity eps(i xi)."""
    return _k(point.y, _layer_from_eps(point, eps))


def _te(y: np.ndarray, k: np.ndarray, combo) -> np.ndarray:
    """(y - k - C) / (y + k + C), -1 for an infinite k."""
    k_safe = np.where(np.isinf(k), 0.0, k)
    finite = (y - k_safe - combo) / (y + k_safe + combo)
    return np.where(np.isinf(k), -1.0, finite)


def _bare(y: np.ndarray, layer: LayerResponse) -> ReflectionPair:
    k = _k(y, layer)
    ke = _k_over_eps(k, layer)
    return ReflectionPair(r_tm=(y - ke) / (y + ke), r_te=_te(y, k, 0.0))


def _coated(y: np.ndarray, layer: LayerResponse, pol: PolarizationComponents) -> ReflectionPair:
    k = _k(y, layer)
    ke = _k_over_eps(k, layer)
    g = np.asarray(pol.tm_term, dtype=float)
    g_finite = np.where(np.isinf(g), 0.0, g)
    r_tm = np.where(np.isinf(g), 1.0, (y + ke * (g_finite - 1.0)) / (y + ke * (g_finite + 1.0)))
    return ReflectionPair(r_tm=r_tm, r_te=_te(y, k, pol.pi_combo))


def _fresnel(y: np.ndarray, film: LayerResponse, substrate: LayerResponse) -> ReflectionPair:
    k_f, k_s = _k(y, film), _k(y, substrate)
    ke_f, ke_s = _k_over_eps(k_f, film), _k_over_eps(k_s, substrate)
    r_tm = _ratio(ke_f - ke_s, ke_f + ke_s, 0.0)
    # k_f = inf: the film exponent vanishes
    k_f_safe = np.where(np.isinf(k_f), 0.0, k_f)
    k_s_safe = np.where(np.isinf(k_s), 0.0, k_s)
    r_te = np.where(np.isinf(k_s), -1.0, _ratio(k_f_safe - k_s_safe, k_f_safe + k_s_safe, 0.0))
    return ReflectionPair(r_tm=r_tm, r_te=r_te)


def r_bare(point: SpectralPoint, eps) -> ReflectionPair:
    """
    Uncoated half-space: r_tm = (eps y - k)/(eps y + k), r_te = (y - k)/(y + k).

    Args:
        point: (zeta, y)
        eps: eps(i xi) of the substrate at zeta (may be inf)
    """
    return _bare(point.y, _layer_from_eps(point, eps))


def _require_tm_term(point: SpectralPoint, pol: PolarizationComponents) -> PolarizationComponents:
    if pol.tm_term is not None:
        return pol
    y, zeta = point.y, point.zeta
    if np.any((y == zeta) & (zeta > 0)):
        raise SingularPointError("the TM factor y pi00 / (y^2 - zeta^2) is singular at y = zeta > 0")
    with np.errstate(divide="ignore", invalid="ignore"):
        tm_term = np.where(zeta == 0, pol.pi00 / y, y * pol.pi00 / ((y - zeta) * (y + zeta)))
    return PolarizationComponents(pi00=pol.pi00, pi_combo=pol.pi_combo, tm_term=tm_term)


def r_graphene_coated(point: SpectralPoint, eps, pol: PolarizationComponents) -> ReflectionPair:
    """
    Half-space coated by a graphene sheet.

    r_tm = [eps y + k (G - 1)] / [eps y + k (G + 1)] with G = y pi00 / (y^2 - zeta^2),
    r_te = (y - k - pi_combo) / (y + k + pi_combo).

    G is taken from ``pol.tm_term``; without it G is formed from pi00, which
    is only possible away from y = zeta > 0.

    Raises:
        SingularPointError: if G must be formed at y = zeta > 0
    """
    pol = _require_tm_term(point, pol)
    return _coated(point.y, _layer_from_eps(point, eps), pol)


def r_fresnel_interface(point: SpectralPoint, eps_f, eps_s) -> ReflectionPair:
    """
    Film/substrate interface: r_tm = (eps_s k_f - eps_f k_s)/(eps_s k_f + eps_f k_s),
    r_te = (k_f - k_s)/(k_f + k_s).
    """
    return _fresnel(point.y, _layer_from_eps(point, eps_f), _layer_from_eps(point, eps_s))


def material_layer(model: MaterialModel, zeta: np.ndarray, separation: float) -> LayerResponse:
    """Layer response on an array of zeta, evaluating the material once per distinct zeta."""
    zeta = np.asarray(zeta, dtype=float)
    unique, inverse = np.unique(zeta, return_inverse=True)
    response = imaginary_axis_response(model, unique, separation)
    inverse = inverse.reshape(zeta.shape)
    return LayerResponse(inv_eps=response.inv_eps[inverse], kappa2=response.kappa2[inverse])


def sheet_polarization(
    zeta: np.ndarray,
    y: np.ndarray,
    ctx: DimensionlessContext,
    sheet: GrapheneSheet,
    rel_tol: float = 1e-10,
) -> PolarizationComponents:
    """Graphene tensor on a (zeta, y) grid, zero-frequency points included."""
    ctx = ctx.for_sheet(sheet)
    zeta, y = np.broadcast_arrays(np.asarray(zeta, dtype=float), np.asarray(y, dtype=float))
    static = (zeta == 0) & (ctx.tau > 0)
    if not static.any():
        return polarization_continuous(zeta, y, ctx, sheet)
    zero = polarization_zero(y[static], ctx, sheet, rel_tol)
    if static.all():
        return PolarizationComponents(
            pi00=zero.pi00.reshape(y.shape),
            pi_combo=zero.pi_combo.reshape(y.shape),
            tm_term=zero.tm_term.reshape(y.shape),
        )
    pi00, combo, tm_term = np.empty(y.shape), np.empty(y.shape), np.empty(y.shape)
    pi00[static], combo[static], tm_term[static] = zero.pi00, zero.pi_combo, zero.tm_term
    rest = polarization_continuous(zeta[~static], y[~static], ctx, sheet)
    pi00[~static], combo[~static], tm_term[~static] = rest.pi00, rest.pi_combo, rest.tm_term
    return PolarizationComponents(pi00=pi00, pi_combo=combo, tm_term=tm_term)


def r_stack(
    point: SpectralPoint,
    stack: PlateStack,
    ctx: DimensionlessContext,
    polarization_rel_tol: float = 1e-10,
) -> ReflectionPair:
    """
    Reflection coefficients of a full plate stack.

    Graphene (if any) sits on the film (if any) on the substrate. The
    graphene-on-film coefficient R1 is combined with the film/substrate
    Fresnel coefficient r as (R1 + r e) / (1 + R1 r e), e = exp(-(D/a) k_f).
    At zeta = 0 materials follow their zero-frequency class.

    Args:
        point: (zeta, y) arrays
        stack: plate description
        ctx: separation, temperature and tau of the evaluation
        polarization_rel_tol: tolerance of the zero-frequency graphene integrals

    Raises:
        ConfigurationError: if the film thickness is not positive
    """
    zeta, y = np.broadcast_arrays(point.zeta, point.y)
    a = ctx.separation
    top_material = stack.film.material if stack.film is not None else stack.substrate
    top = material_layer(top_material, zeta, a)

    if stack.coating is not None:
        pol = sheet_polarization(zeta, y, ctx, stack.coating, polarization_rel_tol)
        first = _coated(y, top, pol)
    else:
        first = _bare(y, top)

    if stack.film is None:
        return first
    if stack.film.thickness <= 0:
        raise ConfigurationError(f"film thickness must be positive, got {stack.film.thickness}")

    substrate = material_layer(stack.substrate, zeta, a)
    interface = _fresnel(y, top, substrate)
    decay = np.exp(-(stack.film.thickness / a) * _k(y, top))

    def combine(r1, r2):
        return (r1 + r2 * decay) / (1.0 + r1 * r2 * decay)

    return ReflectionPair(
        r_tm=combine(first.r_tm, interface.r_tm),
        r_te=combine(first.r_te, interface.r_te),
    )
