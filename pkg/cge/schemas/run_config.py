"""Run configuration: INI file sections merged with command-line flags."""
import configparser
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

Command = Literal[
    "pressure-scan",
    "ratio-scan",
    "gradient-scan",
    "thermal-correction",
    "band-compare",
    "dump-eps",
    "dump-reflection",
    "dump-polarization",
]

PLATE_COMMANDS = ("pressure-scan", "ratio-scan")
SPHERE_COMMANDS = ("gradient-scan", "thermal-correction", "band-compare")

# (spacing, points, a_min, a_max) per command family
PLATE_GRID = ("log", 60, 100e-9, 6e-6)
SPHERE_GRID = ("linear", 50, 200e-9, 600e-9)


def _split_list(value):
    if isinstance(value, str):
        return tuple(item.strip() for item in value.split(",") if item.strip())
    return value


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RunSection(_Section):
    command: Command = "ratio-scan"


class GeometrySection(_Section):
    a_min: Optional[float] = Field(default=None, gt=0, description="m")
    a_max: Optional[float] = Field(default=None, gt=0, description="m")
    points: Optional[int] = Field(default=None, ge=1)
    spacing: Optional[Literal["log", "linear"]] = None
    temperature: float = Field(default=300.0, ge=0, description="K")


class SideSection(_Section):
    material: str = "fused-silica"
    coated: bool = False
    film: Optional[str] = Field(default=None, description="NAME:THICKNESS with the thickness in m")
    extrapolation: Optional[Literal["drude", "plasma"]] = None
    carrier_omega_p: Optional[float] = Field(default=None, gt=0, description="eV, free-carrier plasma frequency")
    carrier_gamma: Optional[float] = Field(default=None, ge=0, description="eV, free-carrier relaxation rate")


class GrapheneSection(_Section):
    delta: float = Field(default=0.0, ge=0, description="eV")
    v_f: float = Field(default=9.0e5, gt=0, description="m/s")


class QuadratureSection(_Section):
    rel_tol: Optional[float] = Field(default=None, gt=0, lt=1)
    abs_tol: Optional[float] = Field(default=None, ge=0)
    max_matsubara: Optional[int] = Field(default=None, ge=1)
    matsubara_block: Optional[int] = Field(default=None, ge=1)
    polarization_rel_tol: Optional[float] = Field(default=None, gt=0)


class SphereSection(_Section):
    radius: float = Field(default=54.1e-6, gt=0, description="m")
    material: str = "gold"
    total_error: float = Field(default=0.012, gt=0, description="Pa")
    overlay: Optional[str] = None
    thicknesses: Tuple[float, ...] = Field(default=(), description="extra film thicknesses, m")

    @field_validator("thicknesses", mode="before")
    @classmethod
    def split_thicknesses(cls, value):
        return _split_list(value)


class BandSection(_Section):
    delta_max: float = Field(default=0.1, ge=0)
    extrapolations: Tuple[Literal["drude", "plasma"], ...] = ("drude", "plasma")
    si_plasma_min: float = Field(default=0.25, gt=0)
    si_plasma_max: float = Field(default=0.35, gt=0)
    si_plasma_nominal: Optional[float] = Field(default=None, gt=0)
    si_carrier_gamma: Optional[float] = Field(default=None, ge=0, description="eV")

    @field_validator("extrapolations", mode="before")
    @classmethod
    def split_extrapolations(cls, value):
        return _split_list(value)


class DumpSection(_Section):
    material: Optional[str] = None
    energy_min: float = Field(default=1e-3, gt=0, description="eV")
    energy_max: float = Field(default=100.0, gt=0, description="eV")
    zetas: Tuple[float, ...] = (0.0, 0.5, 1.0, 2.0, 5.0)
    y_max: float = Field(default=20.0, gt=0)
    points: int = Field(default=50, ge=2)

    @field_validator("zetas", mode="before")
    @classmethod
    def split_zetas(cls, value):
        return _split_list(value)


class OutputSection(_Section):
    path: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    trace: bool = False
    workers: Optional[int] = Field(default=None, ge=1)


SECTIONS = ("run", "geometry", "side1", "side2", "graphene", "quadrature", "sphere", "band", "dump", "output")


class RunConfig(_Section):
    """Complete description of one CLI run."""
    run: RunSection = RunSection()
    geometry: GeometrySection = GeometrySection()
    side1: SideSection = SideSection()
    side2: SideSection = SideSection()
    graphene: GrapheneSection = GrapheneSection()
    quadrature: QuadratureSection = QuadratureSection()
    sphere: SphereSection = SphereSection()
    band: BandSection = BandSection()
    dump: DumpSection = DumpSection()
    output: OutputSection = OutputSection()

    @property
    def command(self) -> str:
        return self.run.command

    @classmethod
    def from_ini(cls, text: str) -> "RunConfig":
        """
        Parse INI text; keys outside the known sections are rejected.

        Raises:
            configparser.Error: on malformed INI syntax
            pydantic.ValidationError: on unknown keys or invalid values
        """
        parser = configparser.ConfigParser(interpolation=None)
        parser.read_string(text)
        data = {section: dict(parser.items(section)) for section in parser.sections()}
        return cls.model_validate(data)

    def to_ini(self) -> str:
        """Emit the configuration as INI text; ``from_ini(to_ini())`` reproduces it."""
        lines: List[str] = []
        for section in SECTIONS:
            lines.append(f"[{section}]")
            for key, value in getattr(self, section).model_dump().items():
                if value is None:
                    continue
                if isinstance(value, (tuple, list)):
                    value = ",".join(str(v) for v in value)
                elif isinstance(value, bool):
                    value = "true" if value else "false"
                lines.append(f"{key} = {value}")
            lines.append("")
        return "\n".join(lines)

    def with_overrides(self, **sections) -> "RunConfig":
        """Copy with ``section={key: value}`` overrides applied and re-validated."""
        data = self.model_dump()
        for section, values in sections.items():
            data[section].update({k: v for k, v in values.items() if v is not None})
        return RunConfig.model_validate(data)

    def grid(self) -> np.ndarray:
        """Separations (m) of the scan, with the command's default grid filling unset values."""
        spacing, points, a_min, a_max = SPHERE_GRID if self.command in SPHERE_COMMANDS else PLATE_GRID
        g = self.geometry
        spacing = g.spacing or spacing
        points = g.points or points
        a_min = g.a_min or a_min
        a_max = g.a_max or a_max
        if a_max < a_min:
            raise ValueError("a_max must not be below a_min")
        if points == 1:
            return np.array([a_min])
        if spacing == "log":
            return np.geomspace(a_min, a_max, points)
        return np.linspace(a_min, a_max, points)
