"""Application configuration settings."""
import os
from functools import lru_cache
from typing import List

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings loaded from environment variables (prefix ``CGE_``)."""

    model_config = SettingsConfigDict(
        env_prefix="CGE_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    app_name: str = "Casimir Graphene Engine"
    engine_version: str = "1.0.0"
    app_description: str = """
    Lifshitz-theory numerics for planar material stacks with optional
    graphene coatings.

    * **Pressure** - finite-temperature Matsubara sum and T = 0 integral
    * **Ratios** - coated vs. uncoated plate pressures
    * **Sphere-plate** - PFA force gradient and its thermal correction
    * **Bands** - model-uncertainty envelopes for experiment comparison
    """

    # Material search path, os.pathsep separated; prepended to the shipped data
    material_path: str = ""

    # Scan execution
    workers: int = 1
    log_level: str = "WARNING"

    # Quadrature defaults
    rel_tol: float = 1e-7
    max_matsubara: int = 1_000_000
    matsubara_block: int = 64
    polarization_rel_tol: float = 1e-10

    # In-process result cache, least recently used entries evicted first
    cache_max_entries: int = 4096

    # Output
    csv_digits: int = 9

    @property
    def parsed_material_path(self) -> List[str]:
        """Split the material search path into directories."""
        if not self.material_path:
            return []
        return [p for p in self.material_path.split(os.pathsep) if p]


@lru_cache()
def get_settings() -> Settings:
    """Get cached application settings."""
    return Settings()
