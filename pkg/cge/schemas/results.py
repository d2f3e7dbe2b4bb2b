"""Result schemas."""
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class PressureResult(BaseModel):
    """Casimir pressure with its convergence record."""
    model_config = ConfigDict(frozen=True)

    pressure: float = Field(description="Pa, negative means attraction")
    matsubara_terms_used: int = 0
    estimated_error: float = Field(default=0.0, ge=0, description="Pa")
    per_term_trace: Optional[Tuple[Tuple[int, float], ...]] = None


class ScanRow(BaseModel):
    """One grid point of a scan."""
    a: float = Field(description="separation in m, or the grid variable of a dump table")
    values: Dict[str, float] = Field(default_factory=dict)
    errors: Dict[str, float] = Field(default_factory=dict)
    flags: Dict[str, bool] = Field(default_factory=dict)
    error: Optional[str] = None
    exit_code: int = 0
    traces: List[Dict[str, Any]] = Field(default_factory=list)
