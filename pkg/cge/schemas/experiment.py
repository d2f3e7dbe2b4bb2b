"""Sphere-plate experiment and model-band schemas."""
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from cge.schemas.material import MaterialModel
from cge.schemas.stack import PlateStack

# PFA relative error is about 0.3-0.4 a/R; above this ratio it is reported
PFA_NOTE_RATIO = 0.01


class SphereExperiment(BaseModel):
    """A sphere above a plate, compared through the normalized force gradient."""
    model_config = ConfigDict(frozen=True)

    radius: float = Field(default=54.1e-6, gt=0, description="R, m")
    plate: PlateStack
    sphere: MaterialModel
    temperature: float = Field(default=300.0, gt=0, description="K")
    total_error: float = Field(default=0.012, gt=0, description="Pa")


class BandSpec(BaseModel):
    """Variant box spanned by the model uncertainties."""
    model_config = ConfigDict(frozen=True)

    delta_max: float = Field(default=0.1, ge=0, description="eV")
    metal_extrapolations: Tuple[Literal["drude", "plasma"], ...] = ("drude", "plasma")
    si_plasma_range: Tuple[float, float] = (0.25, 0.35)
    si_plasma_nominal: Optional[float] = None
    si_carrier_gamma: Optional[float] = Field(default=None, ge=0, description="eV")

    @model_validator(mode="after")
    def check_range(self):
        low, high = self.si_plasma_range
        if not 0 < low <= high:
            raise ValueError("si_plasma_range must satisfy 0 < low <= high")
        if not self.metal_extrapolations:
            raise ValueError("at least one metal extrapolation is required")
        return self

    @property
    def nominal_plasma(self) -> float:
        if self.si_plasma_nominal is not None:
            return self.si_plasma_nominal
        return 0.5 * sum(self.si_plasma_range)


class OverlayPoint(BaseModel):
    """One measured gradient with its errors."""
    a_nm: float = Field(gt=0)
    a_err_nm: float = Field(default=0.0, ge=0)
    grad_pa: float
    grad_err_pa: float = Field(gt=0)

    @property
    def separation(self) -> float:
        return self.a_nm * 1e-9


class ModelBand(BaseModel):
    """Pointwise envelope of the model variants over a separation grid."""
    separations: Tuple[float, ...]
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    central: Tuple[float, ...]
    variants: int
