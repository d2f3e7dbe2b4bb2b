"""Plate stack and scenario schemas."""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from cge.schemas.graphene import GrapheneSheet
from cge.schemas.material import MaterialModel


class Film(BaseModel):
    """A single film of finite thickness on top of the substrate."""
    model_config = ConfigDict(frozen=True)

    material: MaterialModel
    thickness: float = Field(description="D, m")


class PlateStack(BaseModel):
    """Optional graphene coating on an optional film on a half-space substrate."""
    model_config = ConfigDict(frozen=True)

    coating: Optional[GrapheneSheet] = None
    film: Optional[Film] = None
    substrate: MaterialModel
    label: str = ""

    @property
    def is_coated(self) -> bool:
        return self.coating is not None

    def describe(self) -> str:
        """Short human readable description, e.g. 'graphene/fused-silica(300nm)/silicon'."""
        if self.label:
            return self.label
        parts = []
        if self.coating is not None:
            parts.append("graphene" if self.coating.delta == 0 else f"graphene[{self.coating.delta:g}eV]")
        if self.film is not None:
            name = self.film.material.name or self.film.material.kind
            parts.append(f"{name}({self.film.thickness * 1e9:g}nm)")
        parts.append(self.substrate.name or self.substrate.kind)
        return "/".join(parts)


class Scenario(BaseModel):
    """Two plates at separation a and temperature T."""
    model_config = ConfigDict(frozen=True)

    separation: float = Field(gt=0, description="a, m")
    temperature: float = Field(default=300.0, ge=0, description="T, K")
    side1: PlateStack
    side2: PlateStack


@dataclass(frozen=True)
class ReflectionPair:
    """TM and TE reflection coefficients."""
    r_tm: np.ndarray
    r_te: np.ndarray


@dataclass(frozen=True)
class LayerResponse:
    """Imaginary-axis response of one layer in the form the reflection formulas use.

    inv_eps is 1/eps (0 for an infinite permittivity), kappa2 the offset in
    k^2 = y^2 + kappa2, i.e. (eps - 1) zeta^2 at zeta > 0.
    """
    inv_eps: np.ndarray
    kappa2: np.ndarray
