"""Dielectric response of substrate and film materials on the imaginary frequency axis.

All frequencies are photon energies in eV. The zero-frequency limit is never
taken from eps(i xi) directly: it is routed through
:func:`zero_frequency_class`.
"""
import logging
import math
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from cge.exceptions import ConfigurationError, DomainError
from cge.schemas.material import (
    CarrierTerm,
    Drude,
    DrudeLike,
    FiniteStatic,
    IdealConductor,
    IdealLike,
    LowFrequencyExtension,
    MaterialModel,
    OpticalTable,
    OscillatorSet,
    Plasma,
    PlasmaLike,
    Tabulated,
    ZeroFrequencyClass,
)
from cge.schemas.stack import LayerResponse
from cge.utils.quadrature import gauss_legendre
from cge.utils.units import to_dimensionless_energy, zeta_to_ev

logger = logging.getLogger(__name__)

# Gauss-Legendre order per interval between table rows (in ln omega)
KK_ORDER = 24


def _as_positive(xi, what: str) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise DomainError(f"{what} requires xi > 0")
    return xi


def _maybe_scalar(value: np.ndarray, like) -> np.ndarray:
    return value.item() if np.ndim(like) == 0 else value


def eps_drude(xi, omega_p: float, gamma: float):
    """
    Drude permittivity 1 + omega_p^2 / [xi (xi + gamma)].

    Args:
        xi: imaginary frequency in eV, > 0 (scalar or array)
        omega_p: plasma frequency in eV
        gamma: relaxation in eV

    Returns:
        eps(i xi), same shape as xi

    Raises:
        DomainError: if any xi <= 0
    """
    x = _as_positive(xi, "eps_drude")
    return _maybe_scalar(1.0 + omega_p ** 2 / (x * (x + gamma)), xi)


def eps_plasma(xi, omega_p: float):
    """Plasma permittivity 1 + omega_p^2 / xi^2 (xi > 0, eV)."""
    x = _as_positive(xi, "eps_plasma")
    return _maybe_scalar(1.0 + (omega_p / x) ** 2, xi)


def _carrier_eps(x: np.ndarray, carriers: CarrierTerm) -> np.ndarray:
    if carriers.kind == "plasma":
        return (carriers.omega_p / x) ** 2
    return carriers.omega_p ** 2 / (x * (x + carriers.gamma))


def eps_oscillator(xi, model: OscillatorSet):
    """
    Oscillator permittivity eps_inf + sum C_j w_j^2 / (w_j^2 + xi^2 + g_j xi).

    At xi = 0 the static value of the bound part (``model.eps0``) is
    returned exactly; free carriers only contribute at xi > 0.

    Raises:
        DomainError: if any xi < 0
    """
    x = np.asarray(xi, dtype=float)
    if np.any(x < 0):
        raise DomainError("eps_oscillator requires xi >= 0")
    eps = np.full(x.shape, model.eps_infinity)
    for term in model.terms:
        w2 = term.omega ** 2
        eps = eps + term.strength * w2 / (w2 + x * x + term.gamma * x)
    zero = x == 0
    eps = np.where(zero, model.eps0, eps)
    if model.carriers is not None and not zero.all():
        safe = np.where(zero, 1.0, x)
        eps = np.where(zero, eps, eps + _carrier_eps(safe, model.carriers))
    return _maybe_scalar(eps, xi)


def _drude_absorption(omega: np.ndarray, omega_p: float, gamma: float) -> np.ndarray:
    """Im eps of the Drude model on the real axis."""
    if gamma == 0:
        return np.zeros_like(omega)
    return omega_p ** 2 * gamma / (omega * (omega * omega + gamma * gamma))


@lru_cache(maxsize=64)
def _kk_nodes(table: OpticalTable, subtract: Optional[Tuple[float, float]] = None):
    """Quadrature nodes of the Kramers-Kronig integral between the table rows.

    Returns (omega^2, weights, last Im eps, first energy, last energy) with
    weights already carrying omega^2 Im eps(omega) d(ln omega).
    """
    energies = table.energies
    im = table.im_eps
    nodes, gl_weights = gauss_legendre(KK_ORDER)
    s = 0.5 * (nodes + 1.0)

    u = np.log(energies)
    width = (u[1:] - u[:-1])[:, None]
    uu = u[:-1, None] + width * s[None, :]
    i0, i1 = im[:-1, None], im[1:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        loglog = np.exp(np.log(i0) + s * (np.log(i1) - np.log(i0)))
    linear = i0 + s * (i1 - i0)
    im_nodes = np.where((i0 > 0) & (i1 > 0), loglog, linear)

    omega = np.exp(uu)
    last = float(im[-1])
    if subtract is not None:
        omega_p, gamma = subtract
        im_nodes = np.clip(im_nodes - _drude_absorption(omega, omega_p, gamma), 0.0, None)
        last = max(last - float(_drude_absorption(energies[-1:], omega_p, gamma)[0]), 0.0)

    weights = 0.5 * width * gl_weights[None, :] * omega ** 2 * im_nodes
    return (omega ** 2).ravel(), weights.ravel(), last, float(energies[0]), float(energies[-1])


def _upper_tail(x: np.ndarray, last: float, top: float) -> np.ndarray:
    """(2/pi) * integral above the table of an Im eps continued as omega^-3."""
    r = x / top
    out = np.empty_like(r)
    small = r < 1e-3
    rs = r[small]
    out[small] = 1.0 / 3.0 - rs ** 2 / 5.0 + rs ** 4 / 7.0
    rl = r[~small]
    out[~small] = (1.0 - np.arctan(rl) / rl) / rl ** 2
    return 2.0 / math.pi * last * out


def _lower_drude_tail(x: np.ndarray, omega_p: float, gamma: float, bottom: float) -> np.ndarray:
    """(2/pi) * integral of the Drude absorption from 0 to the first table row."""
    if gamma == 0:
        return omega_p ** 2 / x ** 2
    out = np.empty_like(x)
    near = np.abs(x - gamma) < 1e-7 * gamma
    xn = x[near]
    out[near] = (np.arctan(bottom / xn) + bottom * xn / (xn ** 2 + bottom ** 2)) / (2.0 * xn ** 3)
    xf = x[~near]
    out[~near] = (np.arctan(bottom / gamma) / gamma - np.arctan(bottom / xf) / xf) / (xf ** 2 - gamma ** 2)
    return 2.0 / math.pi * omega_p ** 2 * gamma * out


def _kramers_kronig(x: np.ndarray, table: OpticalTable, extension: LowFrequencyExtension) -> np.ndarray:
    subtract = None
    if extension.kind == "plasma":
        subtract = (extension.omega_p, extension.gamma)
    omega2, weights, last, bottom, top = _kk_nodes(table, subtract)

    eps = 1.0 + 2.0 / math.pi * ((1.0 / (omega2[None, :] + x[:, None] ** 2)) @ weights)
    eps += _upper_tail(x, last, top)
    if extension.kind == "drude":
        eps += _lower_drude_tail(x, extension.omega_p, extension.gamma, bottom)
    elif extension.kind == "plasma":
        eps += (extension.omega_p / x) ** 2
    return eps


def eps_tabulated(xi, table: OpticalTable, extension: Optional[LowFrequencyExtension] = None):
    """
    Kramers-Kronig continuation of tabulated Im eps to the imaginary axis.

    eps(i xi) = 1 + (2/pi) int_0^inf omega Im eps(omega) / (omega^2 + xi^2) d omega,
    with log-log interpolation between rows, an omega^-3 continuation above
    the table and the low-frequency ``extension`` below it.

    Raises:
        DomainError: if any xi <= 0
    """
    x = np.atleast_1d(_as_positive(xi, "eps_tabulated")).ravel()
    eps = _kramers_kronig(x, table, extension or LowFrequencyExtension())
    return _maybe_scalar(eps.reshape(np.shape(xi)), xi)


def static_tabulated(table: OpticalTable) -> float:
    """Static permittivity of tabulated data without a free-carrier extension."""
    return float(_kramers_kronig(np.zeros(1), table, LowFrequencyExtension())[0])


def eps_imaginary(model: MaterialModel, xi):
    """
    eps(i xi) of any material variant for xi > 0 (eV, scalar or array).

    An ideal conductor returns +inf.
    """
    if isinstance(model, Drude):
        return eps_drude(xi, model.omega_p, model.gamma)
    if isinstance(model, Plasma):
        return eps_plasma(xi, model.omega_p)
    if isinstance(model, OscillatorSet):
        _as_positive(xi, "eps_imaginary")
        return eps_oscillator(xi, model)
    if isinstance(model, Tabulated):
        return eps_tabulated(xi, model.table, model.extension)
    if isinstance(model, IdealConductor):
        x = _as_positive(xi, "eps_imaginary")
        return _maybe_scalar(np.full(x.shape, np.inf), xi)
    raise ConfigurationError(f"unknown material variant {type(model).__name__}")


def zero_frequency_class(model: MaterialModel) -> ZeroFrequencyClass:
    """Classify the xi -> 0 behaviour of a material."""
    if isinstance(model, Drude):
        return DrudeLike()
    if isinstance(model, Plasma):
        return PlasmaLike(omega_p=model.omega_p)
    if isinstance(model, OscillatorSet):
        if model.carriers is None:
            return FiniteStatic(eps0=model.eps0)
        if model.carriers.kind == "plasma":
            return PlasmaLike(omega_p=model.carriers.omega_p)
        return DrudeLike()
    if isinstance(model, Tabulated):
        if model.extension.kind == "drude":
            return DrudeLike()
        if model.extension.kind == "plasma":
            return PlasmaLike(omega_p=model.extension.omega_p)
        return FiniteStatic(eps0=static_tabulated(model.table))
    if isinstance(model, IdealConductor):
        return IdealLike()
    raise ConfigurationError(f"unknown material variant {type(model).__name__}")


def imaginary_axis_response(model: MaterialModel, zeta, separation: float) -> LayerResponse:
    """
    Layer quantities (1/eps, kappa^2) at dimensionless frequencies zeta.

    At zeta > 0, kappa^2 = (eps - 1) zeta^2. At zeta = 0 the values follow the
    zero-frequency class: FiniteStatic -> (1/eps0, 0), DrudeLike -> (0, 0),
    PlasmaLike -> (0, omega_p~^2), IdealLike -> (0, inf).

    Args:
        model: material
        zeta: dimensionless frequencies 2 a xi / c, >= 0
        separation: a in m, fixing the eV scale of zeta
    """
    zeta = np.asarray(zeta, dtype=float)
    if np.any(zeta < 0):
        raise DomainError("zeta must be non-negative")
    if isinstance(model, IdealConductor):
        return LayerResponse(inv_eps=np.zeros(zeta.shape), kappa2=np.full(zeta.shape, np.inf))

    inv_eps = np.empty(zeta.shape)
    kappa2 = np.empty(zeta.shape)
    positive = zeta > 0
    if positive.any():
        zp = zeta[positive]
        eps = np.asarray(eps_imaginary(model, zeta_to_ev(zp, separation)))
        inv_eps[positive] = 1.0 / eps
        kappa2[positive] = (eps - 1.0) * zp ** 2
    if not positive.all():
        cls = zero_frequency_class(model)
        if isinstance(cls, FiniteStatic):
            inv_eps[~positive], kappa2[~positive] = 1.0 / cls.eps0, 0.0
        elif isinstance(cls, DrudeLike):
            inv_eps[~positive], kappa2[~positive] = 0.0, 0.0
        else:
            wp = to_dimensionless_energy(cls.omega_p, separation)
            inv_eps[~positive], kappa2[~positive] = 0.0, wp ** 2
    return LayerResponse(inv_eps=inv_eps, kappa2=kappa2)


def has_free_carriers(model: MaterialModel) -> bool:
    """True when the material has a Drude or plasma low-frequency behaviour."""
    if isinstance(model, (Drude, Plasma)):
        return True
    if isinstance(model, OscillatorSet):
        return model.carriers is not None
    if isinstance(model, Tabulated):
        return model.extension.kind != "none"
    return False


def with_extrapolation(model: MaterialModel, kind: str, gamma: Optional[float] = None) -> MaterialModel:
    """
    Switch the low-frequency behaviour of a conducting material.

    Args:
        model: any material; those without free carriers are returned unchanged
        kind: "drude" or "plasma"
        gamma: relaxation rate (eV) of the Drude form. Tables and carrier terms
            keep their own when omitted; a closed-form plasma material has none,
            so switching it to Drude requires this argument.

    Raises:
        ConfigurationError: on an unknown kind, or a plasma material switched
            to Drude without a relaxation rate
    """
    if kind not in ("drude", "plasma"):
        raise ConfigurationError(f"unknown extrapolation {kind!r}")
    if gamma is not None and gamma < 0:
        raise ConfigurationError("relaxation rate must be non-negative")
    if isinstance(model, Drude) and kind == "plasma":
        return Plasma(omega_p=model.omega_p, name=model.name, provenance=model.provenance)
    if isinstance(model, Plasma) and kind == "drude":
        if gamma is None:
            raise ConfigurationError(
                f"plasma material {model.name or model.kind!r} has no relaxation rate; give gamma for a Drude form"
            )
        return Drude(omega_p=model.omega_p, gamma=gamma, name=model.name, provenance=model.provenance)
    update = {"kind": kind}
    if gamma is not None:
        update["gamma"] = gamma
    if isinstance(model, OscillatorSet) and model.carriers is not None:
        return model.model_copy(update={"carriers": model.carriers.model_copy(update=update)})
    if isinstance(model, Tabulated) and model.extension.kind != "none":
        return model.model_copy(update={"extension": model.extension.model_copy(update=update)})
    return model


def with_carrier_parameters(
    model: MaterialModel,
    omega_p: Optional[float] = None,
    gamma: Optional[float] = None,
) -> MaterialModel:
    """
    Replace the free-carrier plasma frequency and relaxation rate (eV).

    Works on carrier terms of oscillator sets, the low-frequency extension of
    tables and closed-form Drude/plasma models. A plasma model keeps no
    relaxation rate, so ``gamma`` is ignored there.

    Raises:
        ConfigurationError: on non-physical values or a material without free carriers
    """
    if omega_p is not None and omega_p <= 0:
        raise ConfigurationError("carrier plasma frequency must be positive")
    if gamma is not None and gamma < 0:
        raise ConfigurationError("carrier relaxation rate must be non-negative")
    update = {key: value for key, value in (("omega_p", omega_p), ("gamma", gamma)) if value is not None}
    if not update:
        return model
    if isinstance(model, OscillatorSet) and model.carriers is not None:
        return model.model_copy(update={"carriers": model.carriers.model_copy(update=update)})
    if isinstance(model, Tabulated) and model.extension.kind != "none":
        return model.model_copy(update={"extension": model.extension.model_copy(update=update)})
    if isinstance(model, Drude):
        return model.model_copy(update=update)
    if isinstance(model, Plasma):
        return model.model_copy(update={"omega_p": omega_p}) if omega_p is not None else model
    raise ConfigurationError(f"material {model.name or model.kind!r} has no free-carrier term")
