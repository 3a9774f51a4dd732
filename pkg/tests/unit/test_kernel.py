"""Tests for the kernel parabola, its involutions, the ladder and the critical data."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadmartin.domain.kernel import Kernel, csqrt
from quadmartin.domain.models import NormalizedModel
from quadmartin.shared.exceptions import DomainError

pytestmark = pytest.mark.unit

mus = st.floats(min_value=0.05, max_value=0.95)
params = st.floats(min_value=-5.0, max_value=5.0)


def kernel_for(mu1: float, r1: float = 0.0, r2: float = 0.0) -> Kernel:
    return Kernel(NormalizedModel(mu1=mu1, r1=r1, r2=r2))


class TestParabola:
    @given(mu1=mus, s=params)
    def test_parabola_lies_on_kernel(self, mu1: float, s: float) -> None:
        k = kernel_for(mu1)
        x, y = k.point(s)
        assert abs(k.gamma(x, y)) <= 1e-10 * (1 + abs(x) + abs(y))
        assert x - y == pytest.approx(s, abs=1e-12)

    @given(mu1=mus, s=params)
    def test_involutions_fix_their_coordinate(self, mu1: float, s: float) -> None:
        k = kernel_for(mu1)
        assert k.x_of_s(k.zeta(s)) == pytest.approx(k.x_of_s(s), abs=1e-9)
        assert k.y_of_s(k.eta(s)) == pytest.approx(k.y_of_s(s), abs=1e-9)
        assert k.zeta(k.zeta(s)) == pytest.approx(s, abs=1e-12)

    @given(mu1=mus, s=params)
    def test_composition_is_the_ladder_shift(self, mu1: float, s: float) -> None:
        k = kernel_for(mu1)
        assert k.zeta(k.eta(s)) == pytest.approx(k.shift(s, 1), abs=1e-12)
        assert k.eta(k.zeta(s)) == pytest.approx(k.shift(s, -1), abs=1e-12)

    @given(mu1=mus, data=st.data())
    def test_upper_branch_recovers_the_parabola(self, mu1: float, data: st.DataObject) -> None:
        k = kernel_for(mu1)
        s = data.draw(st.floats(min_value=-3.0, max_value=k.s_max))
        assert complex(k.branch_Y(k.x_of_s(s), 1)).real == pytest.approx(k.y_of_s(s), abs=1e-9)

    def test_branch_points(self, p1: NormalizedModel) -> None:
        k = Kernel(p1)
        assert k.x_max == pytest.approx(0.32)
        assert k.y_max == pytest.approx(0.02)
        assert k.x_of_s(k.s_max) == pytest.approx(k.x_max)
        assert k.y_of_s(k.s_min) == pytest.approx(k.y_max)

    def test_branches_are_complex_beyond_branch_point(self, p0: NormalizedModel) -> None:
        k = Kernel(p0)
        value = k.branch_Y(1.0, 1)
        assert isinstance(value, complex)
        assert abs(k.gamma(1.0, value)) < 1e-12

    def test_csqrt(self) -> None:
        assert csqrt(4.0) == 2.0
        assert csqrt(-4.0) == pytest.approx(2j)
        np.testing.assert_allclose(csqrt(np.array([-1.0, 1.0])), [1j, 1.0])


class TestLadder:
    def test_neighbours_share_a_coordinate(self, p3: NormalizedModel) -> None:
        k = Kernel(p3)
        a0, b0 = k.point(0.2)
        for n in range(5):
            even = k.ladder(a0, b0, 2 * n)
            odd = k.ladder(a0, b0, 2 * n + 1)
            after = k.ladder(a0, b0, 2 * n + 2)
            assert odd.a == pytest.approx(even.a, abs=1e-10)
            assert odd.b == pytest.approx(after.b, abs=1e-10)

    def test_negative_indices_run_upward(self, p3: NormalizedModel) -> None:
        k = Kernel(p3)
        a0, b0 = k.point(0.1)
        point = k.ladder(a0, b0, -2)
        assert point.ab == pytest.approx(k.point(0.1 + 2))

    def test_ladder_arrays_match_ladder(self, p1: NormalizedModel) -> None:
        k = Kernel(p1)
        s0 = 0.3
        m, a, b = k.ladder_arrays(s0, -4, 5)
        a0, b0 = k.point(s0)
        for i, index in enumerate(m):
            point = k.ladder(a0, b0, int(index))
            assert a[i] == pytest.approx(point.a, abs=1e-10)
            assert b[i] == pytest.approx(point.b, abs=1e-10)

    def test_off_parabola_base_is_rejected(self, p0: NormalizedModel) -> None:
        with pytest.raises(DomainError):
            Kernel(p0).ladder(1.0, 1.0, 3)


class TestAngles:
    @given(mu1=mus, alpha=st.floats(min_value=0.0, max_value=math.pi / 2))
    def test_alpha_of_s_inverts_s_of_alpha(self, mu1: float, alpha: float) -> None:
        k = kernel_for(mu1)
        assert k.alpha_of_s(k.s_of_alpha(alpha)) == pytest.approx(alpha, abs=1e-9)

    @given(mu1=mus, alpha=st.floats(min_value=0.0, max_value=math.pi / 2))
    def test_saddle_maximises_the_directional_form(self, mu1: float, alpha: float) -> None:
        k = kernel_for(mu1)
        best = k.saddle(alpha)
        value = math.cos(alpha) * best.x + math.sin(alpha) * best.y
        s = np.linspace(k.s_min - 1.0, k.s_max + 1.0, 201)
        others = math.cos(alpha) * k.x_of_s(s) + math.sin(alpha) * k.y_of_s(s)
        assert np.all(others <= value + 1e-10)

    def test_endpoints(self, p0: NormalizedModel) -> None:
        k = Kernel(p0)
        assert k.s_of_alpha(0.0) == k.s_max
        assert k.s_of_alpha(math.pi / 2) == k.s_min
        assert k.s_of_alpha(k.alpha_mu) == pytest.approx(0.0, abs=1e-15)

    def test_ds_dalpha(self, p0: NormalizedModel) -> None:
        k = Kernel(p0)
        alpha, h = 0.4, 1e-6
        numeric = (k.s_of_alpha(alpha + h) - k.s_of_alpha(alpha - h)) / (2 * h)
        assert k.ds_dalpha(alpha) == pytest.approx(numeric, rel=1e-6)

    def test_angle_out_of_range(self, p0: NormalizedModel) -> None:
        with pytest.raises(DomainError):
            Kernel(p0).s_of_alpha(-0.1)


class TestCriticalData:
    def test_pole_of_phi2(self, p1: NormalizedModel) -> None:
        crit = Kernel(p1).critical
        assert crit.pole_phi2
        assert not crit.pole_phi1
        assert crit.s_star == pytest.approx(2.0 / 3.0)
        assert crit.x_star == pytest.approx(0.311111, abs=1e-6)
        assert crit.alpha_star == pytest.approx(math.atan(2.0 / 13.0), abs=1e-8)
        assert crit.alpha_star2 == math.pi / 2

    def test_pole_vanishes_gamma2_on_lower_branch(self, p1: NormalizedModel) -> None:
        k = Kernel(p1)
        x_star = k.critical.x_star
        assert abs(k.gamma2(x_star, k.branch_Y(x_star, -1))) < 1e-10

    def test_mirror_model_has_pole_of_phi1(self, p1_mirror: NormalizedModel) -> None:
        crit = Kernel(p1_mirror).critical
        assert crit.pole_phi1
        assert not crit.pole_phi2
        assert crit.y_star2 == pytest.approx(0.311111, abs=1e-6)
        assert crit.alpha_star2 == pytest.approx(math.pi / 2 - math.atan(2.0 / 13.0), abs=1e-8)

    def test_no_poles(self, p0: NormalizedModel) -> None:
        crit = Kernel(p0).critical
        assert not (crit.pole_phi2 or crit.pole_phi1)
        assert (crit.alpha_star, crit.alpha_star2) == (0.0, math.pi / 2)
        assert crit.clamp(1.0) == 1.0

    def test_double_root(self, double_root: NormalizedModel) -> None:
        crit = Kernel(double_root).critical
        assert crit.double_root_phi2
        assert not crit.pole_phi2
        assert crit.alpha_star == 0.0

    def test_clamp(self, p1: NormalizedModel) -> None:
        crit = Kernel(p1).critical
        assert crit.clamp(0.05) == crit.alpha_star
        assert crit.clamp(1.0) == 1.0

    def test_rows_cover_all_quantities(self, p1: NormalizedModel) -> None:
        names = [name for name, _ in Kernel(p1).critical.rows()]
        assert "x_star" in names and "alpha_star2" in names and "double_root_phi1" in names
        assert len(names) == len(set(names)) == 15

    @pytest.mark.parametrize(
        ("r1", "r2", "expected"), [(0.5, 0.5, -2.0 / 3.0), (0.0, 2.0, -2.0 / 3.0), (0.0, 0.0, -2.0)]
    )
    def test_convergence_exponent(self, r1: float, r2: float, expected: float) -> None:
        assert kernel_for(0.5, r1, r2).convergence_exponent == pytest.approx(expected)
