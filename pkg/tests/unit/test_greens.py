"""Tests for the Green density asymptotics, Martin kernel limits and contour inversion."""

import math

import pytest
from pytest_mock import MockerFixture

from quadmartin.domain.greens import GreenDensity
from quadmartin.domain.models import (
    AsymptoticResult,
    HarmonicCase,
    HarmonicEval,
    NormalizedModel,
    QuadratureSpec,
    Regime,
)
from quadmartin.shared.exceptions import DomainError, OutOfScopeError

pytestmark = pytest.mark.unit

Z0 = (1.0, 1.0)


@pytest.fixture
def density(make_compensation):
    def make(model: NormalizedModel) -> GreenDensity:
        return GreenDensity(make_compensation(model))

    return make


class TestDecayRate:
    def test_interior_rate_is_the_saddle_value(self, density, p0: NormalizedModel) -> None:
        green = density(p0)
        alpha = math.pi / 3
        saddle = green.kernel.saddle(alpha)
        expected = math.cos(alpha) * saddle.x + math.sin(alpha) * saddle.y
        assert green.decay_rate(alpha) == pytest.approx(expected)

    def test_frozen_rate_uses_the_pole(self, density, p1: NormalizedModel) -> None:
        green = density(p1)
        crit = green.kernel.critical
        alpha = 0.05
        expected = math.cos(alpha) * crit.x_star + math.sin(alpha) * crit.y_star
        assert green.decay_rate(alpha) == pytest.approx(expected, rel=1e-9)
        assert crit.y_star == pytest.approx(-0.355556, abs=1e-6)

    def test_rate_is_non_negative(self, density, p3: NormalizedModel) -> None:
        green = density(p3)
        for alpha in (0.0, 0.3, math.pi / 4, 1.2, math.pi / 2):
            assert green.decay_rate(alpha) >= -1e-15

    def test_angle_out_of_range(self, density, p0: NormalizedModel) -> None:
        with pytest.raises(DomainError):
            density(p0).decay_rate(2.0)

    def test_tauberian_constant(self, density, p0: NormalizedModel) -> None:
        assert density(p0).tauberian_kappa() == pytest.approx(0.752253, abs=1e-6)


class TestAsymptotics:
    def test_interior(self, density, p0: NormalizedModel) -> None:
        green = density(p0)
        alpha = math.pi / 3
        result = green.asymptotic_g(Z0, alpha)
        assert result.regime is Regime.INTERIOR
        assert result.power == -0.5
        h = green.compensation.h_alpha(Z0, alpha).value
        assert result.constant == pytest.approx(GreenDensity.saddle_constant(alpha) * h)

    def test_boundary_without_pole(self, density, p0: NormalizedModel) -> None:
        result = density(p0).asymptotic_g(Z0, 0.0)
        assert result.regime is Regime.BOUNDARY0_NOPOLE
        assert result.constant == 0.0
        assert result.secondary_power == -1.5
        assert result.secondary_constant > 0

    def test_boundary_double_root(self, density, double_root: NormalizedModel) -> None:
        result = density(double_root).asymptotic_g(Z0, 0.0)
        assert result.regime is Regime.BOUNDARY0_DOUBLE
        assert result.power == -0.5

    def test_frozen_below_alpha_star(self, density, p1: NormalizedModel) -> None:
        green = density(p1)
        result = green.asymptotic_g(Z0, 0.05)
        assert result.regime is Regime.FROZEN_LOW
        assert result.power == 0.0
        assert result.decay_rate == pytest.approx(green.decay_rate(0.05))

    def test_at_alpha_star_halves_the_frozen_constant(self, density, p1: NormalizedModel) -> None:
        green = density(p1)
        crit = green.kernel.critical
        at_star = green.asymptotic_g(Z0, crit.alpha_star)
        frozen = green.asymptotic_g(Z0, 0.05)
        assert at_star.regime is Regime.AT_STAR_POLE
        assert at_star.constant == pytest.approx(frozen.constant / 2)
        assert at_star.sub_regime_constant("frozen_side") == pytest.approx(frozen.constant)
        with pytest.raises(OutOfScopeError):
            at_star.sub_regime_constant("bounded")
        with pytest.raises(KeyError):
            at_star.sub_regime_constant("unknown")

    def test_frozen_above_alpha_star2(self, density, p1_mirror: NormalizedModel) -> None:
        result = density(p1_mirror).asymptotic_g(Z0, math.pi / 2)
        assert result.regime is Regime.FROZEN_HIGH

    def test_value_at(self) -> None:
        result = AsymptoticResult(
            alpha=0.0,
            regime=Regime.BOUNDARY0_NOPOLE,
            decay_rate=0.5,
            power=-0.5,
            constant=2.0,
            secondary_power=-1.5,
            secondary_constant=1.0,
        )
        r = 4.0
        assert result.value_at(r) == pytest.approx((2.0 / 2.0 + 1.0 / 8.0) * math.exp(-2.0))


class TestMartinKernel:
    def test_unit_at_origin(self, density, p3: NormalizedModel) -> None:
        assert density(p3).martin_kernel_limit((0.0, 0.0), 0.7) == 1.0

    def test_unit_in_drift_direction(self, density, p0: NormalizedModel) -> None:
        green = density(p0)
        assert green.martin_kernel_limit(Z0, green.kernel.alpha_mu) == pytest.approx(1.0)

    def test_clamped_below_alpha_star(self, density, p1: NormalizedModel) -> None:
        green = density(p1)
        alpha_star = green.kernel.critical.alpha_star
        at_star = green.martin_kernel_limit(Z0, alpha_star)
        assert math.isfinite(at_star)
        assert green.martin_kernel_limit(Z0, alpha_star / 2) == pytest.approx(at_star, rel=1e-12)

    def test_ratio_carries_truncation_state(
        self, density, p3: NormalizedModel, mocker: MockerFixture
    ) -> None:
        green = density(p3)

        def evaluation(z0, alpha, tol=None) -> HarmonicEval:
            at_origin = z0 == (0.0, 0.0)
            return HarmonicEval(
                alpha=alpha,
                z0=z0,
                value=2.0 if at_origin else 3.0,
                case_tag=HarmonicCase.INTERIOR,
                n_terms=10000 if at_origin else 40,
                tail_bound=1e-4 if at_origin else 3e-6,
                converged=not at_origin,
            )

        mocker.patch.object(green.compensation, "h_alpha", side_effect=evaluation)
        kernel = green.martin_kernel(Z0, 0.7)
        assert kernel.real == pytest.approx(1.5)
        assert not kernel.converged
        assert kernel.n_terms == 10040
        assert kernel.tail_bound == pytest.approx(1.5 * (5e-5 + 1e-6))
        assert not green.martin_kernel((0.0, 0.0), 0.7).converged

    def test_origin_series_has_finite_tail_on_pole_model(self, density, p1: NormalizedModel) -> None:
        green = density(p1)
        origin = green.compensation.h_alpha((0.0, 0.0), 0.5)
        kernel = green.martin_kernel(Z0, 0.5)
        assert math.isfinite(origin.tail_bound)
        assert math.isfinite(kernel.tail_bound)
        assert kernel.converged == (origin.converged and green.compensation.h_alpha(Z0, 0.5).converged)


class TestContourInversion:
    def test_axis_target_is_rejected(self, density, p0: NormalizedModel, quadrature_p0) -> None:
        with pytest.raises(DomainError):
            density(p0).green_numeric(Z0, 3.0, 0.0, quadrature_p0)

    def test_target_below_start_is_rejected(self, density, p0: NormalizedModel, quadrature_p0) -> None:
        with pytest.raises(DomainError, match="exceed the starting point"):
            density(p0).green_numeric(Z0, 0.5, 0.5, quadrature_p0)

    def test_panels_cover_the_line(self) -> None:
        panels = GreenDensity._panels(50.0, 4.0)
        assert panels[0][0] == 0.0
        assert panels[-1][1] == 50.0
        assert panels[0][1] == pytest.approx(math.pi / 8)
        assert all(left[1] == right[0] for left, right in zip(panels, panels[1:], strict=False))

    def test_tail_majorant_decreases(self) -> None:
        tails = [GreenDensity._tail(1.0, 2.0, v) for v in (1.0, 10.0, 100.0)]
        assert tails == sorted(tails, reverse=True)

    def test_epsilon_must_stay_below_half_the_drift(self) -> None:
        with pytest.raises(ValueError, match="epsilon"):
            QuadratureSpec.default_for(0.5, 0.5, epsilon=0.3)

    @pytest.mark.slow
    def test_density_is_positive(self, density, p0: NormalizedModel, quadrature_p0) -> None:
        assert density(p0).green_numeric(Z0, 3.0, 2.0, quadrature_p0) > 0

    @pytest.mark.slow
    def test_density_approaches_its_asymptotic_form(
        self, density, p0: NormalizedModel, quadrature_p0
    ) -> None:
        green = density(p0)
        alpha = math.pi / 3
        asymptotic = green.asymptotic_g(Z0, alpha)
        ratios = [
            green.green_numeric(Z0, r * math.cos(alpha), r * math.sin(alpha), quadrature_p0)
            / asymptotic.value_at(r)
            for r in (10.0, 20.0, 40.0)
        ]
        assert ratios[0] > ratios[1] > ratios[2] > 1.0
        assert ratios[2] - 1.0 < 0.6 * (ratios[0] - 1.0)
        assert ratios[2] == pytest.approx(1.0, abs=0.1)
