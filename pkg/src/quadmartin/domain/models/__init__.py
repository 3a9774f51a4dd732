"""Domain models for quadmartin."""

from .geometry import CriticalData, LadderPoint, SPoint
from .model import (
    ModelParams,
    NormalizedModel,
    Point,
    SpaceTimeMap,
    ValidationCheck,
    ValidationReport,
)
from .results import (
    ArcSample,
    AsymptoticResult,
    Estimate,
    HarmonicCase,
    HarmonicEval,
    PathSample,
    QuadratureSpec,
    Regime,
    SeriesSettings,
    SeriesValue,
    SubRegime,
)

__all__ = [
    "ArcSample",
    "AsymptoticResult",
    "CriticalData",
    "Estimate",
    "HarmonicCase",
    "HarmonicEval",
    "LadderPoint",
    "ModelParams",
    "NormalizedModel",
    "PathSample",
    "Point",
    "QuadratureSpec",
    "Regime",
    "SPoint",
    "SeriesSettings",
    "SeriesValue",
    "SpaceTimeMap",
    "SubRegime",
    "ValidationCheck",
    "ValidationReport",
]
