"""Tests for process parameters, normalization and the space-time map."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadmartin.application.services import ModelService
from quadmartin.domain.models import ModelParams, NormalizedModel, SpaceTimeMap
from quadmartin.shared.exceptions import (
    DomainError,
    ModelValidationError,
    NonFiniteParameterError,
)

pytestmark = pytest.mark.unit

GENERAL = ModelParams(sigma1=2.0, sigma2=1.0, mu1=1.0, mu2=1.0, r1=0.5, r2=0.5)


class TestModelParams:
    def test_admissible_model_passes_every_check(self) -> None:
        report = ModelParams(1.0, 1.0, 0.5, 0.5, 0.0, 0.0).checks()
        assert report.passed
        assert report.failed == []
        assert [check.name for check in report.checks] == [
            "sigma_positive",
            "drift_positive",
            "reflection_r1",
            "reflection_r2",
            "existence",
        ]

    @pytest.mark.parametrize(
        ("params", "failed"),
        [
            (ModelParams(0.0, 1.0, 0.5, 0.5, 0.0, 0.0), "sigma_positive"),
            (ModelParams(1.0, 1.0, -0.1, 0.5, 0.0, 0.0), "drift_positive"),
            (ModelParams(1.0, 1.0, 0.5, 0.5, -1.5, 0.0), "reflection_r1"),
            (ModelParams(1.0, 1.0, 0.5, 0.5, 0.0, -1.5), "reflection_r2"),
            (ModelParams(1.0, 1.0, 0.5, 0.5, 2.0, 0.5), "existence"),
        ],
    )
    def test_each_violation_is_named(self, params: ModelParams, failed: str) -> None:
        report = params.checks()
        assert not report.passed
        assert failed in report.failed

    def test_raise_if_failed_carries_check_names(self) -> None:
        report = ModelParams(1.0, 1.0, 0.5, 0.5, 2.0, 0.5).checks()
        with pytest.raises(ModelValidationError) as excinfo:
            report.raise_if_failed()
        assert excinfo.value.failed_checks == ["existence"]
        assert str(excinfo.value).startswith("Invalid model:")

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_parameter_is_tagged(self, bad: float) -> None:
        with pytest.raises(NonFiniteParameterError) as excinfo:
            ModelParams(1.0, 1.0, bad, 0.5, 0.0, 0.0)
        assert excinfo.value.details["parameter"] == "mu1"
        assert excinfo.value.details["tag"] == "non_finite"
        assert excinfo.value.exit_code == 2

    def test_is_normalized(self) -> None:
        assert ModelParams(1.0, 1.0, 0.25, 0.75, 0.0, 0.0).is_normalized
        assert not GENERAL.is_normalized


class TestNormalizedModel:
    def test_mu2_is_derived(self) -> None:
        model = NormalizedModel(mu1=0.2, r1=0.0, r2=2.0)
        assert model.mu2 == 1.0 - 0.2
        assert model.mu == (0.2, 0.8)

    def test_from_drift_rejects_wrong_sum(self) -> None:
        with pytest.raises(ModelValidationError) as excinfo:
            NormalizedModel.from_drift(0.5, 0.6, 0.0, 0.0)
        assert excinfo.value.failed_checks == ["drift_sum"]

    def test_inadmissible_reflection_is_rejected(self) -> None:
        with pytest.raises(ModelValidationError):
            NormalizedModel(mu1=0.5, r1=2.0, r2=1.0)

    def test_as_params_round_trip(self) -> None:
        params = NormalizedModel(mu1=0.3, r1=0.1, r2=0.2).as_params()
        assert params.sigma1 == params.sigma2 == 1.0
        assert params.mu1 + params.mu2 == pytest.approx(1.0, abs=1e-15)


class TestSpaceTimeMap:
    def test_identity(self) -> None:
        mapping = SpaceTimeMap.identity()
        assert mapping.apply((2.0, 3.0)) == (2.0, 3.0)
        assert mapping.time_factor == 1.0
        assert mapping.jacobian == 1.0

    def test_scales(self) -> None:
        mapping = SpaceTimeMap(sigma1=2.0, sigma2=1.0, lam=1.5)
        assert mapping.scale_x == pytest.approx(0.75)
        assert mapping.scale_y == pytest.approx(1.5)
        assert mapping.time_factor == pytest.approx(2.25)

    @given(
        x=st.floats(min_value=0.0, max_value=100.0),
        y=st.floats(min_value=0.0, max_value=100.0),
    )
    def test_invert_undoes_apply(self, x: float, y: float) -> None:
        mapping = SpaceTimeMap(sigma1=2.0, sigma2=0.7, lam=1.3)
        back = mapping.invert(mapping.apply((x, y)))
        assert back[0] == pytest.approx(x, rel=1e-12, abs=1e-12)
        assert back[1] == pytest.approx(y, rel=1e-12, abs=1e-12)

    def test_apply_rejects_points_outside_quadrant(self) -> None:
        with pytest.raises(DomainError):
            SpaceTimeMap.identity().apply((-1.0, 0.0))

    def test_angle_fixes_endpoints(self) -> None:
        mapping = SpaceTimeMap(sigma1=2.0, sigma2=1.0, lam=1.5)
        assert mapping.angle(0.0) == 0.0
        assert mapping.angle(math.pi / 2) == math.pi / 2
        assert mapping.angle(math.pi / 4) == pytest.approx(math.atan(0.5))

    @given(alpha=st.floats(min_value=0.0, max_value=math.pi / 2))
    def test_direction_maps_unit_vector(self, alpha: float) -> None:
        mapping = SpaceTimeMap(sigma1=2.0, sigma2=1.0, lam=1.5)
        angle, length = mapping.direction(alpha)
        x, y = mapping.apply((math.cos(alpha), math.sin(alpha)))
        assert length * math.cos(angle) == pytest.approx(x, abs=1e-12)
        assert length * math.sin(angle) == pytest.approx(y, abs=1e-12)

    def test_angle_rejects_out_of_range(self) -> None:
        with pytest.raises(DomainError):
            SpaceTimeMap.identity().angle(2.0)


class TestModelService:
    def test_normalizes_general_model(self) -> None:
        model, mapping = ModelService().normalize(GENERAL)
        assert model.mu1 == pytest.approx(1.0 / 3.0)
        assert model.mu2 == pytest.approx(2.0 / 3.0)
        assert model.r1 == pytest.approx(1.0)
        assert model.r2 == pytest.approx(0.25)
        assert mapping.lam == pytest.approx(1.5)

    def test_normalized_drift_is_dilated_drift(self) -> None:
        model, mapping = ModelService().normalize(GENERAL)
        drift = mapping.apply((GENERAL.mu1, GENERAL.mu2))
        assert drift[0] / mapping.time_factor == pytest.approx(model.mu1)
        assert drift[1] / mapping.time_factor == pytest.approx(model.mu2)

    def test_already_normalized_uses_identity(self) -> None:
        _, mapping = ModelService().normalize(ModelParams(1.0, 1.0, 0.5, 0.5, 0.0, 0.0))
        assert mapping == SpaceTimeMap.identity()

    def test_normalize_rejects_inadmissible(self) -> None:
        with pytest.raises(ModelValidationError):
            ModelService().normalize(ModelParams(1.0, 1.0, 0.5, -0.5, 0.0, 0.0))

    def test_validate_never_raises(self) -> None:
        report = ModelService().validate(ModelParams(1.0, 1.0, 0.5, -0.5, 0.0, 0.0))
        assert report.failed == ["drift_positive"]

    def test_map_angle_matches_formula(self) -> None:
        _, mapping = ModelService().normalize(GENERAL)
        alpha = 0.7
        expected = math.atan2(1.0 * math.sin(alpha), 2.0 * math.cos(alpha))
        assert ModelService.map_angle(mapping, alpha) == pytest.approx(expected)
