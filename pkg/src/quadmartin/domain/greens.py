"""Green density: directional asymptotics and inversion along vertical contours."""

import cmath
import logging
import math
from collections.abc import Callable

from scipy.integrate import quad
from scipy.special import gamma as gamma_function

from quadmartin.domain.compensation import Compensation
from quadmartin.domain.kernel import ANGLE_TOL, csqrt
from quadmartin.domain.models import (
    AsymptoticResult,
    Point,
    QuadratureSpec,
    Regime,
    SeriesValue,
    SubRegime,
)
from quadmartin.shared.exceptions import (
    DomainError,
    NumericalConsistencyError,
    QuadMartinError,
)

logger = logging.getLogger(__name__)

V_MAX_CAP = 1e5
NEAR_ORIGIN_PANELS = 8
PANEL_GROWTH = 1.5
# points where the conjugate symmetry of the integrands is checked
SYMMETRY_POINTS = (0.5, 2.0, 8.0)
AXIS_STEP = 0.05


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= math.pi / 2:
        raise DomainError("angle must lie in [0, pi/2]", "alpha", alpha)


class GreenDensity:
    """Asymptotics and numerical values of the Green density ``g^{z0}``."""

    def __init__(self, compensation: Compensation) -> None:
        """Initialize on top of a compensation evaluator."""
        self.compensation = compensation
        self.kernel = compensation.kernel

    # exponential rates and constants

    def decay_rate(self, alpha: float) -> float:
        """``cos(alpha) x(a) + sin(alpha) y(a)`` at the saddle of ``a = clamp(alpha)``."""
        _check_alpha(alpha)
        point = self.kernel.saddle(self.kernel.critical.clamp(alpha))
        return math.cos(alpha) * point.x + math.sin(alpha) * point.y

    def tauberian_kappa(self, face: int = 2) -> float:
        """``((1 + mu2)/2 Gamma(1/2))^-1``, or the ``mu1`` mirror for ``face=1``."""
        mu = self.kernel.mu2 if face == 2 else self.kernel.mu1
        return 1.0 / ((1.0 + mu) / 2.0 * float(gamma_function(0.5)))

    @staticmethod
    def saddle_constant(alpha: float) -> float:
        """``1/sqrt(2 pi (cos(alpha) + sin(alpha)))``."""
        return 1.0 / math.sqrt(2 * math.pi * (math.cos(alpha) + math.sin(alpha)))

    def _pole_subregimes(self, constant: float, side: str) -> tuple[SubRegime, ...]:
        return (
            SubRegime(name="vanishing", condition="r (alpha - alpha_c)^2 -> 0", constant=constant / 2),
            SubRegime(name="bounded", condition="r (alpha - alpha_c)^2 -> K > 0", constant=None),
            SubRegime(
                name="frozen_side",
                condition=f"r (alpha - alpha_c)^2 -> inf, alpha on the {side} side",
                constant=constant,
            ),
            SubRegime(
                name="saddle_side",
                condition="r (alpha - alpha_c)^2 -> inf, alpha inside the critical range",
                constant=None,
            ),
        )

    def asymptotic_g(self, z0: Point, alpha: float) -> AsymptoticResult:
        """Leading behaviour of ``g^{z0}(r e_alpha)`` as ``r -> inf``."""
        _check_alpha(alpha)
        comp = self.compensation
        crit = self.kernel.critical
        rho = self.decay_rate(alpha)

        def h(angle: float) -> float:
            return comp.h_alpha(z0, angle).value

        if alpha <= ANGLE_TOL and not crit.pole_phi2:
            h0 = h(0.0)
            if crit.double_root_phi2:
                return AsymptoticResult(
                    alpha=alpha, regime=Regime.BOUNDARY0_DOUBLE, decay_rate=rho, power=-0.5, constant=h0
                )
            return AsymptoticResult(
                alpha=alpha,
                regime=Regime.BOUNDARY0_NOPOLE,
                decay_rate=rho,
                power=-0.5,
                constant=alpha * h0 / math.sqrt(2 * math.pi),
                secondary_power=-1.5,
                secondary_constant=2 * self.tauberian_kappa(2) * h0,
            )
        if alpha >= math.pi / 2 - ANGLE_TOL and not crit.pole_phi1:
            h0 = h(math.pi / 2)
            if crit.double_root_phi1:
                return AsymptoticResult(
                    alpha=alpha, regime=Regime.BOUNDARY_PI2_DOUBLE, decay_rate=rho, power=-0.5, constant=h0
                )
            return AsymptoticResult(
                alpha=alpha,
                regime=Regime.BOUNDARY_PI2_NOPOLE,
                decay_rate=rho,
                power=-0.5,
                constant=(math.pi / 2 - alpha) * h0 / math.sqrt(2 * math.pi),
                secondary_power=-1.5,
                secondary_constant=2 * self.tauberian_kappa(1) * h0,
            )

        if crit.pole_phi2 and alpha <= crit.alpha_star + ANGLE_TOL:
            frozen = comp.star_constant() * h(crit.alpha_star)
            if abs(alpha - crit.alpha_star) <= ANGLE_TOL:
                return AsymptoticResult(
                    alpha=alpha,
                    regime=Regime.AT_STAR_POLE,
                    decay_rate=rho,
                    power=0.0,
                    constant=frozen / 2,
                    sub_regimes=self._pole_subregimes(frozen, "lower"),
                )
            return AsymptoticResult(
                alpha=alpha, regime=Regime.FROZEN_LOW, decay_rate=rho, power=0.0, constant=frozen
            )
        if crit.pole_phi1 and alpha >= crit.alpha_star2 - ANGLE_TOL:
            frozen = comp.star2_constant() * h(crit.alpha_star2)
            if abs(alpha - crit.alpha_star2) <= ANGLE_TOL:
                return AsymptoticResult(
                    alpha=alpha,
                    regime=Regime.AT_STAR2_POLE,
                    decay_rate=rho,
                    power=0.0,
                    constant=frozen / 2,
                    sub_regimes=self._pole_subregimes(frozen, "upper"),
                )
            return AsymptoticResult(
                alpha=alpha, regime=Regime.FROZEN_HIGH, decay_rate=rho, power=0.0, constant=frozen
            )

        return AsymptoticResult(
            alpha=alpha,
            regime=Regime.INTERIOR,
            decay_rate=rho,
            power=-0.5,
            constant=self.saddle_constant(alpha) * h(alpha),
        )

    def martin_kernel(self, z0: Point, alpha: float) -> SeriesValue:
        """``h_a(z0)/h_a(0)`` with ``a = clamp(alpha, alpha*, alpha**)`` and its truncation error.

        The ratio converges only when both series do; the tail bound is the
        first-order relative error of the quotient.
        """
        _check_alpha(alpha)
        angle = self.kernel.critical.clamp(alpha)
        origin = self.compensation.h_alpha((0.0, 0.0), angle)
        if not math.isfinite(origin.value) or origin.value == 0.0:
            raise QuadMartinError(
                f"h_alpha(0) is not usable for normalization at alpha={angle}",
                {"alpha": angle, "value": origin.value},
            )
        if z0[0] == 0.0 and z0[1] == 0.0:
            return SeriesValue(1.0, origin.n_terms, 0.0, origin.converged)
        point = self.compensation.h_alpha(z0, angle)
        ratio = point.value / origin.value
        if point.value == 0.0:
            tail = point.tail_bound / abs(origin.value)
        else:
            relative = origin.tail_bound / abs(origin.value) + point.tail_bound / abs(point.value)
            tail = abs(ratio) * relative
        return SeriesValue(
            value=ratio,
            n_terms=origin.n_terms + point.n_terms,
            tail_bound=tail if math.isfinite(tail) else math.inf,
            converged=origin.converged and point.converged,
        )

    def martin_kernel_limit(self, z0: Point, alpha: float) -> float:
        """Value of :meth:`martin_kernel`."""
        return self.martin_kernel(z0, alpha).real

    # contour inversion

    def _integrands(
        self, z0: Point, a: float, b: float, spec: QuadratureSpec
    ) -> list[tuple[str, Callable[[float], complex], float]]:
        """Integrands ``F(v)`` of the three contour integrals with their decay rates in ``sqrt(v)``."""
        k = self.kernel
        comp = self.compensation
        a0, b0 = z0
        eps = spec.epsilon

        def first(v: float) -> complex:
            x = complex(-eps, v)
            y = k.branch_Y(x, 1)
            phi2 = comp.phi2_complex(x, z0).value
            return phi2 * k.gamma2(x, y) * cmath.exp(-a * x - b * y) / csqrt(k.mu2**2 - 2 * x)

        def second(v: float) -> complex:
            y = complex(-eps, v)
            x = k.branch_X(y, 1)
            phi1 = comp.phi1_complex(y, z0).value
            return phi1 * k.gamma1(x, y) * cmath.exp(-a * x - b * y) / csqrt(k.mu1**2 - 2 * y)

        if b - b0 >= a - a0 and b > b0:

            def third(v: float) -> complex:
                x = complex(-eps, v)
                y = k.branch_Y(x, 1)
                return cmath.exp((a0 - a) * x + (b0 - b) * y) / csqrt(k.mu2**2 - 2 * x)

            third_rate = b - b0
        elif a > a0:

            def third(v: float) -> complex:
                y = complex(-eps, v)
                x = k.branch_X(y, 1)
                return cmath.exp((a0 - a) * x + (b0 - b) * y) / csqrt(k.mu1**2 - 2 * y)

            third_rate = a - a0
        else:
            raise DomainError(
                "the target must exceed the starting point in at least one coordinate",
                "(a, b)",
                (a, b),
            )
        return [("I1", first, b + b0), ("I2", second, a + a0), ("I3", third, third_rate)]

    @staticmethod
    def _tail(envelope: float, rate: float, v: float) -> float:
        """``int_v^inf C exp(-rate sqrt(t)) dt``."""
        root = math.sqrt(v)
        return 2 * envelope * math.exp(-rate * root) * (root / rate + 1 / rate**2)

    def _truncation(
        self, name: str, f: Callable[[float], complex], rate: float, spec: QuadratureSpec
    ) -> float:
        """Smallest ``v_max`` whose tail majorant is below ``abs_tol``."""
        if spec.v_max is not None:
            return spec.v_max
        if rate <= 0:
            raise DomainError(f"{name} has no decay along the contour", "rate", rate)
        envelope = max(abs(f(v)) * math.exp(rate * math.sqrt(v)) for v in (0.0, 1.0, 4.0, 16.0))
        envelope = max(envelope, spec.abs_tol)
        v_max = (math.log(envelope / spec.abs_tol) / rate) ** 2
        while self._tail(envelope, rate, v_max) > math.pi * spec.abs_tol / 3:
            v_max *= 1.2
        if v_max > V_MAX_CAP:
            logger.warning(f"{name}: contour truncated at {V_MAX_CAP:g} instead of {v_max:.3g}")
            v_max = V_MAX_CAP
        return max(v_max, 1.0)

    @staticmethod
    def _panels(v_max: float, frequency: float) -> list[tuple[float, float]]:
        """Quarter-period panels near the real axis, geometrically growing further out."""
        width = min(math.pi / (2 * max(frequency, 1e-3)), v_max)
        edges = [0.0]
        while edges[-1] < v_max:
            if len(edges) > NEAR_ORIGIN_PANELS:
                width *= PANEL_GROWTH
            edges.append(min(edges[-1] + width, v_max))
        return list(zip(edges[:-1], edges[1:], strict=True))

    def _integrate(
        self, name: str, f: Callable[[float], complex], rate: float, frequency: float, spec: QuadratureSpec
    ) -> float:
        v_max = self._truncation(name, f, rate, spec)
        panels = self._panels(v_max, frequency)
        pieces = []
        for lo, hi in panels:
            out = quad(
                lambda v: f(v).real,
                lo,
                hi,
                epsabs=spec.abs_tol / len(panels),
                epsrel=spec.rel_tol,
                limit=spec.max_subdiv,
                full_output=1,
            )
            if len(out) > 3:
                logger.warning(f"{name} panel [{lo:.4g}, {hi:.4g}]: {out[3]}")
            pieces.append(out[0])

        asymmetry = max(abs(f(-v) - f(v).conjugate()) for v in SYMMETRY_POINTS)
        imaginary = asymmetry * v_max / (2 * math.pi)
        if imaginary > 10 * spec.abs_tol:
            raise NumericalConsistencyError(f"{name}_imaginary_part", imaginary, 10 * spec.abs_tol)

        value = math.fsum(pieces) / math.pi
        logger.debug(f"{name}={value:.12g} over [0, {v_max:.4g}] in {len(panels)} panels")
        return value

    def green_numeric(self, z0: Point, a: float, b: float, spec: QuadratureSpec) -> float:
        """``g^{z0}(a, b)`` as the sum of the three vertical-contour integrals.

        Raises:
            DomainError: If ``(a, b)`` is not in the open quadrant or no
                explicit-exponential form applies
            NumericalConsistencyError: If the integrands break conjugate symmetry
        """
        if not (a > 0 and b > 0):
            raise DomainError("target point must lie in the open quadrant", "(a, b)", (a, b))
        if z0[0] < 0 or z0[1] < 0:
            raise DomainError("starting point must lie in the closed quadrant", "z0", z0)
        frequency = a + b + z0[0] + z0[1]
        total = [
            self._integrate(name, f, rate, frequency, spec)
            for name, f, rate in self._integrands(z0, a, b, spec)
        ]
        value = math.fsum(total)
        logger.info(
            f"g^{z0}({a:g}, {b:g}) = {value:.10g} "
            f"(I1={total[0]:.4g}, I2={total[1]:.4g}, I3={total[2]:.4g})"
        )
        return value

    def green_on_axis(self, z0: Point, a: float, spec: QuadratureSpec, step: float = AXIS_STEP) -> float:
        """``g^{z0}(a, 0+)`` by linear extrapolation from ``b = step`` and ``step/2``."""
        near = self.green_numeric(z0, a, step / 2, spec)
        far = self.green_numeric(z0, a, step, spec)
        return 2 * near - far
