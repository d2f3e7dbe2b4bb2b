"""CLI commands, one module per command family."""
from cge.commands import band_compare
from cge.commands import dumps
from cge.commands import gradient_scan
from cge.commands import pressure_scan
from cge.commands import ratio_scan
from cge.commands import thermal_correction

__all__ = [
    "band_compare",
    "dumps",
    "gradient_scan",
    "pressure_scan",
    "ratio_scan",
    "thermal_correction",
]
