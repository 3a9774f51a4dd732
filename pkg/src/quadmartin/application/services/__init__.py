"""Application services for quadmartin."""

from .greens_service import GreensService
from .model_service import ModelService
from .simulation_service import Experiment, ExperimentResult, SimulationService
from .verification_service import (
    REFERENCE_MODELS,
    CriterionResult,
    VerificationScale,
    VerificationService,
)

__all__ = [
    "CriterionResult",
    "Experiment",
    "ExperimentResult",
    "GreensService",
    "ModelService",
    "REFERENCE_MODELS",
    "SimulationService",
    "VerificationScale",
    "VerificationService",
]
