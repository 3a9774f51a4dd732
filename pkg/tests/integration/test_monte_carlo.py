"""Monte Carlo estimates against the analytic transforms and harmonic functions."""

import math

import pytest

from quadmartin.application.services import SimulationService
from quadmartin.domain.models import NormalizedModel
from quadmartin.infrastructure.simulation import SimulationPlan

pytestmark = [pytest.mark.integration, pytest.mark.slow]

Z0 = (1.0, 1.0)


def plan(seed: int, dt: float = 2e-3, t_max: float = 30.0) -> SimulationPlan:
    return SimulationPlan(n_paths=4000, dt=dt, t_max=t_max, seed=seed, batch_size=1000, threads=2)


def test_total_local_time_on_the_horizontal_face(p0: NormalizedModel) -> None:
    service = SimulationService.for_model(p0)
    current = plan(seed=1)
    result = service.laplace(Z0, 0.0, 0.0, current, face="y=0")
    reference = service.total_mass_reference(Z0)
    euler = service.dt_allowance(current, constant=2.0)
    assert result.estimate.agrees_with(reference, n_se=4.0, rel_allowance=euler)


def test_interior_laplace_transform(p3: NormalizedModel) -> None:
    service = SimulationService.for_model(p3, harmonic_terms=200)
    current = plan(seed=2)
    result = service.laplace(Z0, -0.5, -0.5, current)
    reference = service.laplace_reference(Z0, -0.5, -0.5)
    euler = service.dt_allowance(current, constant=2.0)
    assert result.estimate.agrees_with(reference, n_se=4.0, rel_allowance=euler)


def test_martin_function_is_harmonic(p3: NormalizedModel) -> None:
    service = SimulationService.for_model(p3, harmonic_terms=200)
    current = plan(seed=3, t_max=1.0)
    result = service.harmonicity(Z0, math.pi / 3, 1.0, current)
    euler = service.dt_allowance(current, constant=2.0)
    assert result.estimate.agrees_with(1.0, n_se=4.0, abs_allowance=euler)


def test_control_function_is_not_harmonic(p3: NormalizedModel) -> None:
    service = SimulationService.for_model(p3)
    result = service.harmonicity(Z0, None, 1.0, plan(seed=4, t_max=1.0))
    # the drift alone moves E[Z1] by mu1 * t
    assert result.estimate.mean - 1.0 > 4 * result.estimate.std_error
