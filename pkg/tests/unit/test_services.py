"""Tests for the application services."""

import math

import numpy as np
import pytest
from pytest_mock import MockerFixture

from quadmartin.application.services import (
    GreensService,
    ModelService,
    SimulationService,
    VerificationService,
)
from quadmartin.application.services.simulation_service import Experiment
from quadmartin.domain.models import AsymptoticResult, ModelParams, NormalizedModel, Regime, SeriesValue
from quadmartin.infrastructure.simulation import SimulationPlan
from quadmartin.shared.config import QuadMartinConfig
from quadmartin.shared.exceptions import (
    ConfigurationError,
    DomainError,
    QuadMartinError,
    SimulationError,
)

pytestmark = pytest.mark.unit

GENERAL = ModelParams(sigma1=2.0, sigma2=1.0, mu1=1.0, mu2=1.0, r1=0.5, r2=0.5)


@pytest.fixture
def general_greens() -> GreensService:
    model, mapping = ModelService().normalize(GENERAL)
    return GreensService(model, harmonic_terms=200, mapping=mapping)


class TestModelService:
    def test_params_from_config(self) -> None:
        config = QuadMartinConfig().merged({"sigma1": 2.0, "mu1": 1.0, "r2": 0.5})
        params = ModelService.params_from_config(config.model)
        assert (params.sigma1, params.mu1, params.r2) == (2.0, 1.0, 0.5)

    def test_map_point(self) -> None:
        _, mapping = ModelService().normalize(GENERAL)
        assert ModelService.map_point(mapping, (1.0, 1.0)) == pytest.approx((0.75, 1.5))


class TestGreensService:
    def test_from_config_normalizes(self) -> None:
        config = QuadMartinConfig().merged({"sigma1": 2.0, "mu1": 1.0, "mu2": 1.0, "r1": 0.5, "r2": 0.5})
        service = GreensService.from_config(config)
        assert not service.normalized
        assert service.model.mu1 == pytest.approx(1.0 / 3.0)
        assert service.density_factor == pytest.approx(0.5)

    def test_quadrature_spec_defaults_and_overrides(self, p0: NormalizedModel) -> None:
        service = GreensService(p0)
        assert service.quadrature_spec().epsilon == pytest.approx(0.125)
        config = QuadMartinConfig().merged({"rel_tol": 1e-6})
        spec = service.quadrature_spec(config, epsilon=0.1)
        assert (spec.epsilon, spec.rel_tol) == (0.1, 1e-6)

    def test_invalid_quadrature_settings(self, p0: NormalizedModel) -> None:
        with pytest.raises(ConfigurationError) as excinfo:
            GreensService(p0).quadrature_spec(epsilon=0.4)
        assert excinfo.value.exit_code == 2

    def test_decay_rate_is_pulled_back(self, general_greens: GreensService, mocker: MockerFixture) -> None:
        rate = mocker.patch.object(general_greens.density, "decay_rate", return_value=0.3)
        alpha = 0.7
        angle, length = general_greens.mapping.direction(alpha)
        assert general_greens.decay_rate(alpha) == pytest.approx(length * 0.3)
        rate.assert_called_once_with(angle)

    def test_green_numeric_is_pulled_back(self, general_greens: GreensService, mocker: MockerFixture) -> None:
        numeric = mocker.patch.object(general_greens.density, "green_numeric", return_value=2.0)
        spec = general_greens.quadrature_spec()
        value = general_greens.green_numeric((1.0, 1.0), 2.0, 4.0, spec)
        assert value == pytest.approx(1.0)
        mapping = general_greens.mapping
        numeric.assert_called_once_with(mapping.apply((1.0, 1.0)), *mapping.apply((2.0, 4.0)), spec)

    def test_green_numeric_wraps_arithmetic_errors(self, p0: NormalizedModel, mocker: MockerFixture) -> None:
        service = GreensService(p0)
        mocker.patch.object(service.density, "green_numeric", side_effect=ZeroDivisionError("boom"))
        with pytest.raises(QuadMartinError, match="boom") as excinfo:
            service.green_numeric((1.0, 1.0), 3.0, 2.0)
        assert isinstance(excinfo.value.__cause__, ZeroDivisionError)

    def test_martin_kernel_uses_mapped_point(
        self, general_greens: GreensService, mocker: MockerFixture
    ) -> None:
        value = SeriesValue(1.5, 10, 0.0, True)
        kernel = mocker.patch.object(general_greens.density, "martin_kernel", return_value=value)
        assert general_greens.martin_kernel_limit((2.0, 2.0), 0.4) == 1.5
        angle, _ = general_greens.mapping.direction(0.4)
        kernel.assert_called_once_with(general_greens.mapping.apply((2.0, 2.0)), angle)

    def test_axis_extrapolation_needs_normalized_model(self, general_greens: GreensService) -> None:
        with pytest.raises(DomainError):
            general_greens.green_on_axis((1.0, 1.0), 3.0)

    def test_asymptotics_constant_is_rescaled(self, general_greens: GreensService) -> None:
        alpha = 0.9
        angle, length = general_greens.mapping.direction(alpha)
        pulled = general_greens.asymptotic_g((1.0, 1.0), alpha)
        base = general_greens.density.asymptotic_g(general_greens.mapping.apply((1.0, 1.0)), angle)
        assert pulled.regime is base.regime
        assert pulled.decay_rate == pytest.approx(length * base.decay_rate)
        expected = general_greens.density_factor * base.constant * length**base.power
        assert pulled.constant == pytest.approx(expected)

    def test_boundary_asymptotic_needs_no_pole(self, p1: NormalizedModel) -> None:
        with pytest.raises(DomainError):
            GreensService(p1, harmonic_terms=200).boundary_density_asymptotic((1.0, 1.0), 5.0)

    def test_boundary_asymptotic_decay_profile(self, p0: NormalizedModel) -> None:
        service = GreensService(p0, harmonic_terms=200)
        near = service.boundary_density_asymptotic((1.0, 1.0), 5.0)
        far = service.boundary_density_asymptotic((1.0, 1.0), 10.0)
        expected = 2.0**-1.5 * math.exp(-5.0 * service.kernel.x_max)
        assert far / near == pytest.approx(expected, rel=1e-12)


class TestSimulationService:
    def test_harmonic_function_matches_domain_evaluation(self, p3: NormalizedModel) -> None:
        service = SimulationService.for_model(p3, harmonic_terms=200)
        assert service.normalized
        points = np.array([[1.0, 1.0], [0.5, 2.0]])
        expected = service.compensation.harmonic(0.9).evaluate(points)
        np.testing.assert_allclose(service.harmonic_function(0.9)(points), expected)

    def test_harmonic_function_is_pulled_back(self) -> None:
        service = SimulationService(GENERAL, harmonic_terms=200)
        mapping = service.mapping
        points = np.array([[1.0, 1.0]])
        mapped = np.array([mapping.apply((1.0, 1.0))])
        expected = service.compensation.harmonic(0.9).evaluate(mapped)
        np.testing.assert_allclose(service.harmonic_function(0.9)(points), expected, rtol=1e-12)

    def test_control_function(self) -> None:
        points = np.array([[2.0, 1.0], [3.0, 0.0]])
        np.testing.assert_array_equal(SimulationService.control_function(points), [2.0, 3.0])

    def test_total_mass_reference(self, p0: NormalizedModel) -> None:
        service = SimulationService.for_model(p0)
        assert service.total_mass_reference((1.0, 1.0)) == pytest.approx(math.exp(-1.0), rel=1e-10)

    def test_face_reference_needs_normalized_model(self) -> None:
        with pytest.raises(DomainError):
            SimulationService(GENERAL).laplace_reference((1.0, 1.0), -0.5, 0.0, face="y=0")

    def test_unknown_face_reference(self, p0: NormalizedModel) -> None:
        with pytest.raises(SimulationError):
            SimulationService.for_model(p0).laplace_reference((1.0, 1.0), -0.5, -0.5, face="corner")

    def test_plan_needs_seed(self) -> None:
        with pytest.raises(SimulationError):
            SimulationService.plan(QuadMartinConfig())
        assert SimulationService.plan(QuadMartinConfig(), seed=4).seed == 4

    def test_harmonicity_in_drift_direction_is_exact(self, p0: NormalizedModel) -> None:
        service = SimulationService.for_model(p0, harmonic_terms=50)
        plan = SimulationPlan(n_paths=200, dt=0.01, t_max=1.0, seed=0, batch_size=100)
        result = service.harmonicity((1.0, 1.0), service.compensation.kernel.alpha_mu, 0.5, plan)
        assert result.experiment is Experiment.HARMONICITY
        assert result.estimate.mean == pytest.approx(1.0)
        row = result.row()
        assert list(row)[-3:] == ["mean", "se", "n"]
        assert row["n"] == 200


class TestVerificationService:
    def test_algebraic_identities_pass(self) -> None:
        rows = VerificationService(quick=True).run(only=[1])
        assert len(rows) == 1
        assert rows[0].passed
        assert rows[0].name == "algebraic identities (P1)"
        assert rows[0].measured <= rows[0].bound

    def test_convergence_exponent_passes(self) -> None:
        rows = VerificationService(quick=True).run(only=[13])
        assert [row.name for row in rows] == ["product exponent (P3)", "product exponent (P1)"]
        assert all(row.passed for row in rows)

    def test_on_start_callback(self) -> None:
        started: list[tuple[int, str]] = []
        VerificationService(quick=True).run(only=[1], on_start=lambda n, name: started.append((n, name)))
        assert started == [(1, "algebraic identities")]

    def test_martin_scan_runs_on_the_greens_cache(self) -> None:
        rows = VerificationService(quick=True).run(only=[12])
        assert [row.name for row in rows] == ["clamp and unit values (P1)", "continuity across alpha* (P1)"]
        assert all(math.isfinite(row.measured) for row in rows)
        assert "relative tail=" in rows[0].detail

    def test_phi2_boundedness_has_a_finite_bound(self) -> None:
        rows = VerificationService(quick=True).run(only=[5])
        bounded = next(row for row in rows if row.name == "phi2 bounded below x_max (P0)")
        assert math.isfinite(bounded.bound)
        assert bounded.passed
        assert bounded.measured <= bounded.bound

    def test_phi2_boundedness_fails_on_blow_up(self, mocker: MockerFixture) -> None:
        service = VerificationService(quick=True)
        comp = service._compensation("P0")
        x_last = comp.kernel.x_max - 0.01
        mocker.patch.object(
            comp, "phi2_continued", side_effect=lambda x, z0: complex(1.0 if x <= x_last else 10.0)
        )
        bounded = next(row for row in service.pole_criterion() if row.name.startswith("phi2 bounded"))
        assert bounded.bound == pytest.approx(1.25)
        assert not bounded.passed

    def test_unknown_criterion(self) -> None:
        with pytest.raises(QuadMartinError, match="Unknown acceptance criterion 15"):
            VerificationService(quick=True).run(only=[15])

    def test_failing_criterion_is_reported(self, mocker: MockerFixture) -> None:
        service = VerificationService(quick=True)
        mocker.patch.object(
            service, "criteria", {1: ("broken", mocker.Mock(side_effect=QuadMartinError("no luck")))}
        )
        rows = service.run(only=[1])
        assert not rows[0].passed
        assert rows[0].detail == "no luck"
        assert math.isnan(rows[0].measured)

    def test_fit_decay_rate_separates_prefactor_corrections(self) -> None:
        asymptotic = AsymptoticResult(
            alpha=0.5, regime=Regime.INTERIOR, decay_rate=0.4, power=-0.5, constant=3.0
        )
        r = np.array([10.0, 15.0, 20.0, 30.0, 40.0])
        g = 3.0 * r**-0.5 * np.exp(-0.41 * r) * np.exp(2.3 / r - 7.0 / r**2)
        assert VerificationService.fit_decay_rate(r, g, asymptotic) == pytest.approx(0.41, rel=1e-10)
