"""Shared fixtures: the reference models and a clean configuration per test."""

import pytest
from click.testing import CliRunner

from quadmartin.domain.compensation import Compensation
from quadmartin.domain.kernel import Kernel
from quadmartin.domain.models import NormalizedModel, QuadratureSpec, SeriesSettings
from quadmartin.shared import config as config_module

# z0 used by most reference computations
Z0 = (1.0, 1.0)


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch: pytest.MonkeyPatch) -> None:
    """Drop the cached process-wide configuration and any QUADMARTIN_* variables."""
    import os

    for key in list(os.environ):
        if key.startswith("QUADMARTIN_"):
            monkeypatch.delenv(key)
    monkeypatch.setattr(config_module, "_config", None)


@pytest.fixture
def p0() -> NormalizedModel:
    """mu = (0.5, 0.5), r = (0, 0): no poles, normal reflection."""
    return NormalizedModel(mu1=0.5, r1=0.0, r2=0.0)


@pytest.fixture
def p3() -> NormalizedModel:
    """mu = (0.5, 0.5), r = (0.5, 0.5): no poles, oblique reflection."""
    return NormalizedModel(mu1=0.5, r1=0.5, r2=0.5)


@pytest.fixture
def p1() -> NormalizedModel:
    """mu = (0.2, 0.8), r = (0, 2): phi2 has a pole."""
    return NormalizedModel(mu1=0.2, r1=0.0, r2=2.0)


@pytest.fixture
def p1_mirror() -> NormalizedModel:
    """mu = (0.8, 0.2), r = (2, 0): phi1 has a pole."""
    return NormalizedModel(mu1=0.8, r1=2.0, r2=0.0)


@pytest.fixture
def double_root() -> NormalizedModel:
    """s* coincides with s_max: the double-root case on the horizontal face."""
    return NormalizedModel(mu1=0.5, r1=0.0, r2=3.0)


@pytest.fixture
def make_compensation():
    """Factory for compensation evaluators with the default truncation settings."""

    def make(model: NormalizedModel, harmonic_terms: int | None = 400) -> Compensation:
        return Compensation(Kernel(model), SeriesSettings(), harmonic_terms)

    return make


@pytest.fixture
def quadrature_p0() -> QuadratureSpec:
    """Default contour settings for P0."""
    return QuadratureSpec.default_for(0.5, 0.5)


@pytest.fixture
def cli_runner() -> CliRunner:
    """Click runner with stdout and stderr kept apart."""
    return CliRunner()
