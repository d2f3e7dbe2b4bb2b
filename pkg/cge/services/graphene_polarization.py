"""Polarization tensor of a gapped graphene sheet on the imaginary frequency axis.

All quantities are dimensionless: zeta = 2 a xi / c, y = 2 a q, the gap
delta_tilde = 2 a Delta / (hbar c) and the Fermi velocity ratio v = v_F / c.
Temperature enters explicitly only through the zero-frequency tensor.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from cge.exceptions import DomainError
from cge.schemas.graphene import DimensionlessContext, GrapheneSheet, PolarizationComponents
from cge.utils.quadrature import escalating_gauss_legendre

logger = logging.getLogger(__name__)

# Below this ratio delta_tilde / f the gap is neglected in Phi
GAPLESS_RATIO = 1e-12
# Phi switches to its power series for f / (2 delta_tilde) below this
SERIES_THRESHOLD = 0.1
_SERIES_TERMS = 12


def f_func(zeta, y, v_f_ratio: float):
    """f = sqrt(v^2 y^2 + (1 - v^2) zeta^2)."""
    zeta = np.asarray(zeta, dtype=float)
    y = np.asarray(y, dtype=float)
    v2 = v_f_ratio * v_f_ratio
    return np.sqrt(v2 * y * y + (1.0 - v2) * zeta * zeta)


def _phi_from_f(f: np.ndarray, delta_tilde: float) -> np.ndarray:
    if delta_tilde < 0:
        raise DomainError("delta_tilde must be non-negative")
    if delta_tilde == 0 and np.any(f == 0):
        raise DomainError("Phi is undefined at f = delta_tilde = 0")

    phi = np.empty(f.shape)
    gapless = delta_tilde < GAPLESS_RATIO * f
    phi[gapless] = math.pi * f[gapless]

    z = np.where(gapless, 1.0, f / (2.0 * delta_tilde if delta_tilde > 0 else 1.0))
    small = ~gapless & (z < SERIES_THRESHOLD)
    if small.any():
        zs = z[small]
        total = np.zeros(zs.shape)
        for n in range(_SERIES_TERMS):
            total += (-1) ** n * zs ** (2 * n + 1) * (1.0 / (2 * n + 1) + 1.0 / (2 * n + 3))
        phi[small] = 2.0 * f[small] * total

    general = ~gapless & ~small
    if general.any():
        fg, zg = f[general], z[general]
        phi[general] = 4.0 * delta_tilde + 2.0 * fg * (1.0 - 1.0 / zg ** 2) * np.arctan(zg)
    return phi


def phi_func(zeta, y, delta_tilde: float, v_f_ratio: float):
    """
    Phi = 4 delta + 2 f (1 - 4 delta^2 / f^2) arctan(f / 2 delta).

    Returns pi f when the gap is negligible against f and uses the power
    series in f / (2 delta) when f is small against the gap.

    Raises:
        DomainError: at f = delta_tilde = 0
    """
    f = f_func(zeta, y, v_f_ratio)
    phi = _phi_from_f(np.atleast_1d(f), delta_tilde)
    return phi.item() if np.ndim(f) == 0 else phi


def polarization_continuous(zeta, y, ctx: DimensionlessContext, sheet: GrapheneSheet) -> PolarizationComponents:
    """
    Temperature-independent tensor at any zeta >= 0 (scalars or broadcastable arrays).

    pi00 = alpha (y^2 - zeta^2) Phi / f^2, pi_combo = alpha Phi and
    tm_term = alpha y Phi / f^2.
    """
    zeta, y = np.broadcast_arrays(np.asarray(zeta, dtype=float), np.asarray(y, dtype=float))
    f = np.atleast_1d(f_func(zeta, y, sheet.v_f_ratio))
    phi = _phi_from_f(f, ctx.delta_tilde).reshape(zeta.shape)
    f = f.reshape(zeta.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        phi_over_f2 = np.where(f > 0, phi / (f * f), 4.0 / (3.0 * max(ctx.delta_tilde, 1e-300)))
    alpha = sheet.alpha
    return PolarizationComponents(
        pi00=alpha * (y - zeta) * (y + zeta) * phi_over_f2,
        pi_combo=alpha * phi,
        tm_term=alpha * y * phi_over_f2,
    )


def polarization_nonzero(l: int, y, ctx: DimensionlessContext, sheet: GrapheneSheet) -> PolarizationComponents:
    """
    Tensor at the Matsubara frequency zeta_l = tau * l, l >= 1.

    Raises:
        DomainError: for l < 1
    """
    if l < 1:
        raise DomainError("polarization_nonzero requires l >= 1")
    return polarization_continuous(ctx.tau * l, y, ctx, sheet)


def _zero_frequency_integrands(u: np.ndarray, y: np.ndarray, ctx: DimensionlessContext, v: float) -> np.ndarray:
    """Integrands of pi00 and pi_combo in u, x = (1 - cos u) / 2, folded to [0, pi/2]."""
    sin_u = np.sin(u)[None, :]
    p = 0.25 * sin_u * sin_u                    # x (1 - x)
    vy2 = (v * y)[:, None] ** 2
    theta = np.sqrt(ctx.delta_tilde ** 2 + vy2 * p)
    z = math.pi * theta / ctx.tau
    with np.errstate(divide="ignore", invalid="ignore"):
        tanh_over_theta = np.where(theta > 0, np.tanh(z) / theta, math.pi / ctx.tau)
    e2z = np.exp(-2.0 * z)
    log_part = ctx.tau / math.pi * (np.log1p(e2z) + 2.0 * z * e2z / (1.0 + e2z))
    pi00 = tanh_over_theta * vy2 * p + log_part
    combo = vy2 * p * tanh_over_theta
    return np.stack([pi00 * sin_u, combo * sin_u])


def polarization_zero(
    y,
    ctx: DimensionlessContext,
    sheet: GrapheneSheet,
    rel_tol: float = 1e-10,
) -> PolarizationComponents:
    """
    Tensor at zero Matsubara frequency, where temperature enters explicitly.

    pi00 = (8 alpha / v^2) [(tau/pi) int ln(2 cosh(pi theta/tau)) dx
                            - delta^2 int tanh(pi theta/tau) / theta dx],
    pi_combo = 8 alpha v^2 y^2 int x (1-x) tanh(pi theta/tau) / theta dx,
    with theta^2 = delta^2 + x (1-x) v^2 y^2 and x over [0, 1].

    Args:
        y: dimensionless wave numbers (scalar or array), >= 0
        ctx: context; ctx.tau must be positive
        sheet: graphene parameters
        rel_tol: agreement required between successive quadrature orders

    Raises:
        DomainError: if tau <= 0
    """
    if ctx.tau <= 0:
        raise DomainError("the zero-frequency tensor requires tau > 0")
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    flat = y_arr.ravel()
    v = sheet.v_f_ratio
    integrals = escalating_gauss_legendre(
        lambda u: _zero_frequency_integrands(u, flat, ctx, v),
        0.0, 0.5 * math.pi, rel_tol,
    )
    alpha = sheet.alpha
    pi00 = (8.0 * alpha / (v * v) * integrals[0]).reshape(y_arr.shape)
    combo = (8.0 * alpha * integrals[1]).reshape(y_arr.shape)
    with np.errstate(divide="ignore"):
        tm_term = np.where(y_arr > 0, pi00 / np.where(y_arr > 0, y_arr, 1.0), np.inf)
    if np.ndim(y) == 0:
        return PolarizationComponents(pi00=pi00[0], pi_combo=combo[0], tm_term=tm_term[0])
    return PolarizationComponents(pi00=pi00, pi_combo=combo, tm_term=tm_term)


def polarization_grid(
    zetas: Sequence[float],
    ys: Sequence[float],
    ctx: DimensionlessContext,
    sheet: GrapheneSheet,
    rel_tol: float = 1e-10,
) -> List[Tuple[float, float, float, float]]:
    """
    Tabulate (zeta, y, pi00, pi_combo) for every y >= zeta of the grid.

    zeta = 0 uses the zero-frequency tensor when ctx.tau > 0 and the
    continuous form otherwise.
    """
    rows: List[Tuple[float, float, float, float]] = []
    ys = np.asarray(ys, dtype=float)
    for zeta in zetas:
        valid = ys[ys >= zeta]
        if valid.size == 0:
            continue
        if zeta == 0 and ctx.tau > 0:
            pol = polarization_zero(valid, ctx, sheet, rel_tol)
        else:
            pol = polarization_continuous(zeta, valid, ctx, sheet)
        rows.extend(
            (float(zeta), float(yv), float(p), float(c))
            for yv, p, c in zip(valid, np.ravel(pol.pi00), np.ravel(pol.pi_combo))
        )
    return rows
