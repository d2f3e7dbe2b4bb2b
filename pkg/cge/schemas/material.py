"""Material model schemas.

Frequencies and damping constants are photon energies in eV.
"""
import logging
from typing import Annotated, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)

SHORT_SPAN_NOTE = "warning: spans less than one decade"


class OpticalTable(BaseModel):
    """Tabulated Im eps(omega) on the real frequency axis."""
    model_config = ConfigDict(frozen=True)

    rows: Tuple[Tuple[float, float], ...]
    provenance_label: str = ""

    @model_validator(mode="before")
    @classmethod
    def check_rows(cls, data):
        if not isinstance(data, dict):
            return data
        rows = tuple((float(e), float(v)) for e, v in data.get("rows", ()))
        if len(rows) < 2:
            raise ValueError("an optical table needs at least two rows")
        energies = [e for e, _ in rows]
        if energies[0] <= 0:
            raise ValueError("photon energies must be positive")
        if any(b <= a for a, b in zip(energies, energies[1:])):
            raise ValueError("photon energies must be strictly increasing")
        if any(v < 0 for _, v in rows):
            raise ValueError("Im eps must be non-negative")

        label = data.get("provenance_label", "") or ""
        if energies[-1] < 10.0 * energies[0] and SHORT_SPAN_NOTE not in label:
            logger.warning("Optical table %r %s", label, SHORT_SPAN_NOTE)
            label = f"{label} ({SHORT_SPAN_NOTE})" if label else SHORT_SPAN_NOTE
        return {**data, "rows": rows, "provenance_label": label}

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for e, _ in self.rows])

    @property
    def im_eps(self) -> np.ndarray:
        return np.array([v for _, v in self.rows])


class _MaterialBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = ""
    provenance: str = ""


class Drude(_MaterialBase):
    """eps = 1 + omega_p^2 / [xi (xi + gamma)]."""
    kind: Literal["drude"] = "drude"
    omega_p: float = Field(gt=0)
    gamma: float = Field(default=0.0, ge=0)


class Plasma(_MaterialBase):
    """eps = 1 + omega_p^2 / xi^2."""
    kind: Literal["plasma"] = "plasma"
    omega_p: float = Field(gt=0)


class OscillatorTerm(BaseModel):
    """One bound-electron oscillator C w^2 / (w^2 + xi^2 + g xi)."""
    model_config = ConfigDict(frozen=True)

    strength: float = Field(ge=0)
    omega: float = Field(gt=0)
    gamma: float = Field(default=0.0, ge=0)


class CarrierTerm(BaseModel):
    """Free-carrier contribution of a doped semiconductor or a metal."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["drude", "plasma"] = "drude"
    omega_p: float = Field(gt=0)
    gamma: float = Field(default=0.0, ge=0)


class OscillatorSet(_MaterialBase):
    """Sum of oscillators on top of eps_infinity, optionally with free carriers."""
    kind: Literal["oscillator"] = "oscillator"
    terms: Tuple[OscillatorTerm, ...] = ()
    eps_infinity: float = Field(default=1.0, ge=1)
    carriers: Optional[CarrierTerm] = None

    @property
    def eps0(self) -> float:
        """Static permittivity of the bound part."""
        return self.eps_infinity + sum(t.strength for t in self.terms)


class LowFrequencyExtension(BaseModel):
    """How tabulated data continues below its first row."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["drude", "plasma", "none"] = "none"
    omega_p: Optional[float] = Field(default=None, gt=0)
    gamma: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def check_parameters(self):
        if self.kind != "none" and self.omega_p is None:
            raise ValueError(f"{self.kind} extension requires omega_p")
        return self


class Tabulated(_MaterialBase):
    """Optical data continued to the imaginary axis by Kramers-Kronig."""
    kind: Literal["tabulated"] = "tabulated"
    table: OpticalTable
    extension: LowFrequencyExtension = LowFrequencyExtension()


class IdealConductor(_MaterialBase):
    """Perfect reflector: r_tm = 1, r_te = -1 at every frequency."""
    kind: Literal["ideal"] = "ideal"


MaterialModel = Annotated[
    Union[Drude, Plasma, OscillatorSet, Tabulated, IdealConductor],
    Field(discriminator="kind"),
]


# Zero-frequency classification

class FiniteStatic(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["finite"] = "finite"
    eps0: float = Field(ge=1)


class DrudeLike(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["drude"] = "drude"


class PlasmaLike(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["plasma"] = "plasma"
    omega_p: float = Field(gt=0)


class IdealLike(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["ideal"] = "ideal"


ZeroFrequencyClass = Annotated[
    Union[FiniteStatic, DrudeLike, PlasmaLike, IdealLike],
    Field(discriminator="kind"),
]
