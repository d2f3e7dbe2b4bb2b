"""Common schemas: spectral points and quadrature settings."""
from dataclasses import dataclass
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from cge.exceptions import DomainError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class SpectralPoint:
    """A point (zeta, y) of the imaginary-frequency Lifshitz domain.

    Both coordinates may be scalars or broadcastable numpy arrays.
    """
    zeta: ArrayLike
    y: ArrayLike

    def __post_init__(self):
        zeta = np.asarray(self.zeta, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if np.any(zeta < 0):
            raise DomainError("zeta must be non-negative")
        if np.any(y < zeta):
            raise DomainError("spectral points require y >= zeta")
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "y", y)


class IntegratorSpec(BaseModel):
    """Geometric-panel Gauss-Legendre rule over (0, inf)."""
    model_config = ConfigDict(frozen=True)

    first_width: float = Field(default=1e-3, gt=0)
    growth: float = Field(default=2.0, gt=1)
    order: int = Field(default=16, ge=2)
    max_order: int = Field(default=256, ge=2)
    min_extent: float = Field(default=2.0, ge=0)
    max_panels: int = Field(default=60, ge=1)


class QuadratureConfig(BaseModel):
    """Accuracy and budget settings of a pressure evaluation."""
    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=1e-7, gt=0, lt=1)
    abs_tol: float = Field(default=0.0, ge=0, description="Pa; 0 means purely relative")
    max_matsubara: int = Field(default=1_000_000, ge=1)
    matsubara_block: int = Field(default=64, ge=1)
    y_integrator: IntegratorSpec = IntegratorSpec()
    zeta_integrator: IntegratorSpec = IntegratorSpec(first_width=1e-4)
    polarization_rel_tol: float = Field(default=1e-10, gt=0)
    trace: bool = False

    @classmethod
    def from_settings(cls, settings=None, **overrides) -> "QuadratureConfig":
        """Build the configuration from engine settings plus overrides."""
        if settings is None:
            from cge.config import get_settings
            settings = get_settings()
        values = {
            "rel_tol": settings.rel_tol,
            "max_matsubara": settings.max_matsubara,
            "matsubara_block": settings.matsubara_block,
            "polarization_rel_tol": settings.polarization_rel_tol,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
