"""Pydantic schemas for engine inputs and results."""
from cge.schemas.common import (
    SpectralPoint,
    IntegratorSpec,
    QuadratureConfig,
)
from cge.schemas.material import (
    OpticalTable,
    Drude,
    Plasma,
    OscillatorTerm,
    CarrierTerm,
    OscillatorSet,
    LowFrequencyExtension,
    Tabulated,
    IdealConductor,
    MaterialModel,
    FiniteStatic,
    DrudeLike,
    PlasmaLike,
    IdealLike,
    ZeroFrequencyClass,
)
from cge.schemas.graphene import (
    GrapheneSheet,
    DimensionlessContext,
    PolarizationComponents,
)
from cge.schemas.stack import (
    Film,
    PlateStack,
    Scenario,
    ReflectionPair,
    LayerResponse,
)
from cge.schemas.results import (
    PressureResult,
    ScanRow,
)
from cge.schemas.experiment import (
    SphereExperiment,
    BandSpec,
    OverlayPoint,
    ModelBand,
)
from cge.schemas.run_config import RunConfig

__all__ = [
    # Common
    "SpectralPoint",
    "IntegratorSpec",
    "QuadratureConfig",
    # Materials
    "OpticalTable",
    "Drude",
    "Plasma",
    "OscillatorTerm",
    "CarrierTerm",
    "OscillatorSet",
    "LowFrequencyExtension",
    "Tabulated",
    "IdealConductor",
    "MaterialModel",
    "FiniteStatic",
    "DrudeLike",
    "PlasmaLike",
    "IdealLike",
    "ZeroFrequencyClass",
    # Graphene
    "GrapheneSheet",
    "DimensionlessContext",
    "PolarizationComponents",
    # Stacks
    "Film",
    "PlateStack",
    "Scenario",
    "ReflectionPair",
    "LayerResponse",
    # Results
    "PressureResult",
    "ScanRow",
    # Experiment
    "SphereExperiment",
    "BandSpec",
    "OverlayPoint",
    "ModelBand",
    # Run configuration
    "RunConfig",
]
