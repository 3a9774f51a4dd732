"""Green density application service."""

import logging
import math

from quadmartin.application.services.model_service import ModelService
from quadmartin.domain.compensation import Compensation
from quadmartin.domain.greens import GreenDensity
from quadmartin.domain.kernel import Kernel
from quadmartin.domain.models import (
    AsymptoticResult,
    Estimate,
    NormalizedModel,
    Point,
    QuadratureSpec,
    SeriesSettings,
    SeriesValue,
    SpaceTimeMap,
    SubRegime,
)
from quadmartin.infrastructure.simulation import (
    SimulationPlan,
    Simulator,
    estimate_boundary_density,
)
from quadmartin.shared.config import QuadMartinConfig
from quadmartin.shared.exceptions import ConfigurationError, DomainError, QuadMartinError

logger = logging.getLogger(__name__)

# half-width of the interval used for Monte Carlo boundary densities
BOUNDARY_HALF_WIDTH = 0.2


class GreensService:
    """Green density asymptotics, Martin kernel limits and contour inversion.

    Works in normalized coordinates; when built with a non-identity
    :class:`SpaceTimeMap` the point-valued methods take original coordinates
    and pull results back through the dilation.
    """

    def __init__(
        self,
        model: NormalizedModel,
        settings: SeriesSettings | None = None,
        harmonic_terms: int | None = None,
        mapping: SpaceTimeMap | None = None,
    ) -> None:
        """Initialize Greens service."""
        self.model = model
        self.kernel = Kernel(model)
        self.compensation = Compensation(self.kernel, settings, harmonic_terms)
        self.density = GreenDensity(self.compensation)
        self.mapping = mapping or SpaceTimeMap.identity()
        logger.info(f"Initialized GreensService for {self.kernel!r}")

    @classmethod
    def from_config(cls, config: QuadMartinConfig) -> "GreensService":
        """Normalize the configured model and build the service."""
        service = ModelService()
        model, mapping = service.normalize(service.params_from_config(config.model))
        settings = SeriesSettings(
            tol=config.series.tol, n_max=config.series.n_max, abs_floor=config.series.abs_floor
        )
        return cls(model, settings, config.series.harmonic_terms, mapping)

    @property
    def normalized(self) -> bool:
        """True when no dilation is applied."""
        return self.mapping == SpaceTimeMap.identity()

    @property
    def density_factor(self) -> float:
        """``g = g_normalized / (sigma1 sigma2)`` under the dilation."""
        return 1.0 / (self.mapping.sigma1 * self.mapping.sigma2)

    def quadrature_spec(
        self, config: QuadMartinConfig | None = None, **overrides: float | int | None
    ) -> QuadratureSpec:
        """Quadrature settings from the configuration with the model-dependent default epsilon."""
        values: dict[str, float | int | None] = {}
        if config is not None:
            values.update(config.quadrature.model_dump())
        values.update({key: value for key, value in overrides.items() if value is not None})
        try:
            return QuadratureSpec.default_for(self.model.mu1, self.model.mu2, **values)
        except ValueError as e:
            raise ConfigurationError(f"invalid quadrature settings: {e}", key="quadrature") from e

    # directional quantities

    def decay_rate(self, alpha: float) -> float:
        """Exponential decay rate of ``g(r e_alpha)``."""
        if self.normalized:
            return self.density.decay_rate(alpha)
        angle, length = self.mapping.direction(alpha)
        return length * self.density.decay_rate(angle)

    def tauberian_kappa(self, face: int = 2) -> float:
        """Constant of the boundary-density Tauberian asymptotics."""
        return self.density.tauberian_kappa(face)

    def asymptotic_g(self, z0: Point, alpha: float) -> AsymptoticResult:
        """Directional asymptotics of the Green density from ``z0``."""
        if self.normalized:
            result = self.density.asymptotic_g(z0, alpha)
            logger.info(f"alpha={alpha:.6f}: regime {result.regime.value}, rho={result.decay_rate:.6g}")
            return result

        angle, length = self.mapping.direction(alpha)
        base = self.density.asymptotic_g(self.mapping.apply(z0), angle)
        scale = self.density_factor

        def pulled(constant: float | None, power: float | None) -> float | None:
            if constant is None or power is None:
                return None
            return scale * constant * length**power

        return AsymptoticResult(
            alpha=alpha,
            regime=base.regime,
            decay_rate=length * base.decay_rate,
            power=base.power,
            constant=scale * base.constant * length**base.power,
            secondary_power=base.secondary_power,
            secondary_constant=pulled(base.secondary_constant, base.secondary_power),
            sub_regimes=tuple(
                SubRegime(
                    name=sub.name,
                    condition=sub.condition,
                    constant=pulled(sub.constant, base.power),
                )
                for sub in base.sub_regimes
            ),
        )

    def martin_kernel(self, z0: Point, alpha: float) -> SeriesValue:
        """Normalized Martin harmonic function ``h_a(z0)/h_a(0)`` with its truncation error."""
        if self.normalized:
            return self.density.martin_kernel(z0, alpha)
        angle, _ = self.mapping.direction(alpha)
        return self.density.martin_kernel(self.mapping.apply(z0), angle)

    def martin_kernel_limit(self, z0: Point, alpha: float) -> float:
        """Normalized Martin harmonic function ``h_a(z0)/h_a(0)``."""
        return self.martin_kernel(z0, alpha).real

    # numerical density

    def green_numeric(self, z0: Point, a: float, b: float, spec: QuadratureSpec | None = None) -> float:
        """Green density at ``(a, b)`` by contour quadrature.

        Raises:
            DomainError: If the point is not admissible
            NumericalConsistencyError: If the imaginary residual is too large
        """
        spec = spec or self.quadrature_spec()
        try:
            if self.normalized:
                return self.density.green_numeric(z0, a, b, spec)
            a_n, b_n = self.mapping.apply((a, b))
            return self.density_factor * self.density.green_numeric(self.mapping.apply(z0), a_n, b_n, spec)
        except QuadMartinError:
            raise
        except (ArithmeticError, ValueError) as e:
            raise QuadMartinError(f"Green density evaluation failed at ({a}, {b}): {e}") from e

    def green_on_axis(self, z0: Point, a: float, spec: QuadratureSpec | None = None) -> float:
        """Green density extrapolated to ``(a, 0+)``."""
        spec = spec or self.quadrature_spec()
        if not self.normalized:
            raise DomainError(
                "axis extrapolation is available for normalized models only", "mapping", self.mapping
            )
        return self.density.green_on_axis(z0, a, spec)

    def boundary_density_identity(
        self, z0: Point, a: float, plan: SimulationPlan, spec: QuadratureSpec | None = None
    ) -> tuple[Estimate, float]:
        """Monte Carlo density of the horizontal-face local time at ``a`` and ``g(a, 0+)/2``."""
        if not a > 0:
            raise DomainError("abscissa must be positive", "a", a)
        if z0[1] == 0.0 and z0[0] == a:
            raise DomainError("starting point coincides with the evaluation point", "z0", z0)
        interval = (max(a - BOUNDARY_HALF_WIDTH, 0.0), a + BOUNDARY_HALF_WIDTH)
        f2 = estimate_boundary_density(Simulator(self.model), z0, "y=0", interval, plan)
        half_g = 0.5 * self.green_on_axis(z0, a, spec)
        logger.info(f"Boundary density at a={a}: f2={f2.mean:.6g} +- {f2.std_error:.2g}, g/2={half_g:.6g}")
        return f2, half_g

    def boundary_density_asymptotic(self, z0: Point, a: float, face: int = 2) -> float:
        """``kappa d_alpha h_alpha(z0) a^{-3/2} exp(-x_max a)`` (no-pole case).

        On the vertical face (``face=1``) the derivative is taken at ``pi/2``
        and the rate is ``y_max``.

        Raises:
            DomainError: If the face transform has a pole or a double root
        """
        crit = self.kernel.critical
        if face == 2:
            if crit.pole_phi2 or crit.double_root_phi2:
                raise DomainError("no-pole asymptotics do not apply on this face", "face", face)
            derivative = self.compensation.h_alpha(z0, 0.0).value
            rate = self.kernel.x_max
        else:
            if crit.pole_phi1 or crit.double_root_phi1:
                raise DomainError("no-pole asymptotics do not apply on this face", "face", face)
            derivative = self.compensation.h_alpha(z0, math.pi / 2).value
            rate = self.kernel.y_max
        return self.tauberian_kappa(face) * derivative * a**-1.5 * math.exp(-rate * a)
