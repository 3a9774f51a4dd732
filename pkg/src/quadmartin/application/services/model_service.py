"""Model validation and normalization application service."""

import logging

from quadmartin.domain.models import (
    ModelParams,
    NormalizedModel,
    Point,
    SpaceTimeMap,
    ValidationReport,
)
from quadmartin.shared.config import ModelConfig
from quadmartin.shared.exceptions import ModelValidationError

logger = logging.getLogger(__name__)


class ModelService:
    """Application service for parameter validation and the space-time dilation."""

    def __init__(self) -> None:
        """Initialize model service."""
        logger.debug("Initialized ModelService")

    @staticmethod
    def params_from_config(config: ModelConfig) -> ModelParams:
        """Build model parameters from the configuration section."""
        return ModelParams(
            sigma1=config.sigma1,
            sigma2=config.sigma2,
            mu1=config.mu1,
            mu2=config.mu2,
            r1=config.r1,
            r2=config.r2,
        )

    def validate(self, params: ModelParams) -> ValidationReport:
        """Run every admissibility check; never raises for finite input."""
        report = params.checks()
        if report.passed:
            logger.info("Model parameters passed all admissibility checks")
        else:
            logger.warning(f"Model parameters failed checks: {', '.join(report.failed)}")
        return report

    def normalize(self, params: ModelParams) -> tuple[NormalizedModel, SpaceTimeMap]:
        """Dilate a general model to unit scales and unit total drift.

        Returns:
            The normalized model and the map from original to normalized coordinates

        Raises:
            ModelValidationError: If the parameters are not admissible
        """
        self.validate(params).raise_if_failed()

        if params.is_normalized:
            logger.info("Model already normalized; using the identity map")
            return NormalizedModel(mu1=params.mu1, r1=params.r1, r2=params.r2), SpaceTimeMap.identity()

        lam = params.mu1 / params.sigma1 + params.mu2 / params.sigma2
        try:
            model = NormalizedModel(
                mu1=(params.mu1 / params.sigma1) / lam,
                r1=params.r1 * params.sigma1 / params.sigma2,
                r2=params.r2 * params.sigma2 / params.sigma1,
            )
        except ModelValidationError as e:
            raise ModelValidationError(
                f"normalized model is not admissible ({', '.join(e.failed_checks)})",
                failed_checks=e.failed_checks,
            ) from e
        mapping = SpaceTimeMap(sigma1=params.sigma1, sigma2=params.sigma2, lam=lam)
        logger.info(
            f"Normalized model: mu=({model.mu1:.6g}, {model.mu2:.6g}), "
            f"r=({model.r1:.6g}, {model.r2:.6g}), lambda={lam:.6g}"
        )
        return model, mapping

    @staticmethod
    def map_point(mapping: SpaceTimeMap, z: Point) -> Point:
        """Image of a quadrant point in normalized coordinates."""
        return mapping.apply(z)

    @staticmethod
    def map_angle(mapping: SpaceTimeMap, alpha: float) -> float:
        """Normalized angle ``arctan((sigma2/sigma1) tan(alpha))`` with endpoints fixed."""
        return mapping.angle(alpha)
