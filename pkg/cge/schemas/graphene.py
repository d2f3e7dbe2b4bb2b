"""Graphene sheet and polarization schemas."""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from cge.utils.units import (
    C_LIGHT,
    FINE_STRUCTURE,
    GRAPHENE_FERMI_VELOCITY,
    temperature_parameter,
    to_dimensionless_energy,
)

logger = logging.getLogger(__name__)

# Gaps at or above this value (eV) are outside the usual Dirac-model range
LARGE_GAP_EV = 0.1


class GrapheneSheet(BaseModel):
    """A gapped Dirac sheet described by its polarization tensor."""
    model_config = ConfigDict(frozen=True)

    delta: float = Field(default=0.0, ge=0, description="mass-gap parameter, eV")
    v_f_ratio: float = Field(default=GRAPHENE_FERMI_VELOCITY / C_LIGHT, gt=0, lt=1)
    alpha: float = Field(default=FINE_STRUCTURE, gt=0, description="coupling constant")

    @model_validator(mode="after")
    def note_large_gap(self):
        if self.delta >= LARGE_GAP_EV:
            logger.warning("Graphene gap %.3g eV is at or above %.1f eV", self.delta, LARGE_GAP_EV)
        return self


class DimensionlessContext(BaseModel):
    """Dimensionless parameters shared by all terms of one evaluation."""
    model_config = ConfigDict(frozen=True)

    tau: float = Field(ge=0)
    delta_tilde: float = Field(default=0.0, ge=0)
    separation: float = Field(gt=0, description="m")
    temperature: float = Field(ge=0, description="K")

    @classmethod
    def build(
        cls,
        separation: float,
        temperature: float,
        sheet: Optional[GrapheneSheet] = None,
    ) -> "DimensionlessContext":
        """Context for separation a (m), temperature T (K) and an optional sheet."""
        delta = sheet.delta if sheet is not None else 0.0
        return cls(
            tau=temperature_parameter(separation, temperature),
            delta_tilde=to_dimensionless_energy(delta, separation),
            separation=separation,
            temperature=temperature,
        )

    def for_sheet(self, sheet: GrapheneSheet) -> "DimensionlessContext":
        """Same separation and temperature with the gap of ``sheet``."""
        return self.model_copy(
            update={"delta_tilde": to_dimensionless_energy(sheet.delta, self.separation)}
        )


@dataclass(frozen=True)
class PolarizationComponents:
    """Dimensionless polarization tensor components on a (zeta, y) grid.

    ``tm_term`` is y * pi00 / (y^2 - zeta^2), the factor entering the TM
    reflection coefficient, evaluated without forming the ratio.
    """
    pi00: np.ndarray
    pi_combo: np.ndarray
    tm_term: Optional[np.ndarray] = None
