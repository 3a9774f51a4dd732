"""Compensation series for the boundary Laplace transforms and harmonic functions.

The boundary transforms satisfy, on the parabola,
``gamma1 phi1(y) + gamma2 phi2(x) + exp(z0 . (x, y)) = 0``. Eliminating phi1
between the points ``zeta s`` and ``s - 2`` (which share ``y``) gives
``phi2(x(s)) = G(s) phi2(x(s - 2)) + G(s) e(s - 2)/gamma2(s - 2) - e(zeta s)/gamma2(zeta s)``
with ``G(s) = (gamma1/gamma2)(zeta s) / (gamma1/gamma2)(s - 2)``; iterating it
yields the series for phi2, and symmetrically for phi1.
"""

import cmath
import logging
import math
from collections.abc import Callable, Iterator
from itertools import count
from typing import Any

import numpy as np

from quadmartin.domain.harmonic import ExponentialSum, MartinHarmonic
from quadmartin.domain.kernel import ANGLE_TOL, Kernel
from quadmartin.domain.models import (
    HarmonicCase,
    HarmonicEval,
    Point,
    SeriesSettings,
    SeriesValue,
)
from quadmartin.domain.series import sum_series
from quadmartin.shared.exceptions import (
    DomainError,
    NumericalConsistencyError,
    SingularityError,
)

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-14
ON_PARABOLA_TOL = 1e-10
NUMERATOR_TOL = 1e-8
# central-difference steps in the parabola parameter and their Richardson weights
DERIVATIVE_STEPS = (1e-3, 5e-4, 2.5e-4)
DERIVATIVE_WEIGHTS = (1.0 / 45, -20.0 / 45, 64.0 / 45)
RESIDUE_STEPS = (1e-3, 5e-4, 2.5e-4)


def _exp(w: Any) -> Any:
    return cmath.exp(w) if isinstance(w, complex) else math.exp(w)


def _check_point(z0: Point) -> None:
    if len(z0) != 2 or z0[0] < 0 or z0[1] < 0:
        raise DomainError("point must lie in the closed quadrant", "z0", z0)


class Compensation:
    """Compensation-method evaluator bound to one kernel."""

    def __init__(
        self,
        kernel: Kernel,
        settings: SeriesSettings | None = None,
        harmonic_terms: int | None = None,
    ) -> None:
        """Initialize with a kernel, truncation settings and harmonic ladder length."""
        self.kernel = kernel
        self.settings = settings or SeriesSettings()
        self.harmonic_terms = harmonic_terms or 2 * self.settings.n_max

    def __repr__(self) -> str:
        return f"Compensation({self.kernel!r}, tol={self.settings.tol})"

    # ratios

    def _ratio(
        self,
        s: Any,
        num: Callable[[Any, Any], Any],
        den: Callable[[Any, Any], Any],
        image: Any,
        neighbour: Any,
        names: tuple[str, str],
    ) -> Any:
        k = self.kernel
        xi, yi = k.point(image)
        xn, yn = k.point(neighbour)
        d_image = den(xi, yi)
        n_neigh = num(xn, yn)
        if abs(d_image) <= SINGULAR_TOL:
            raise SingularityError(
                f"{names[1]} vanishes at the image of s={s}", factor=names[1], location=s
            )
        if abs(n_neigh) <= SINGULAR_TOL:
            raise SingularityError(
                f"{names[0]} vanishes at the neighbour of s={s}",
                factor=names[0],
                location=s,
            )
        return num(xi, yi) * den(xn, yn) / (d_image * n_neigh)

    def ratio_G(self, s: Any) -> Any:
        """``G(s) = (gamma1/gamma2)(zeta s) / (gamma1/gamma2)(s - 2)``.

        Raises:
            SingularityError: If ``gamma2(zeta s)`` or ``gamma1(s - 2)`` vanishes
        """
        k = self.kernel
        return self._ratio(s, k.gamma1, k.gamma2, k.zeta(s), s - 2, ("gamma1", "gamma2"))

    def ratio_Gt(self, s: Any) -> Any:
        """``G~(s) = (gamma2/gamma1)(eta s) / (gamma2/gamma1)(s + 2)``."""
        k = self.kernel
        return self._ratio(s, k.gamma2, k.gamma1, k.eta(s), s + 2, ("gamma2", "gamma1"))

    # boundary transforms

    def _exp_over(self, form: Callable[[Any, Any], Any], s: Any, z0: Point, name: str) -> Any:
        x, y = self.kernel.point(s)
        g = form(x, y)
        if abs(g) <= SINGULAR_TOL:
            raise SingularityError(f"{name} vanishes on the ladder", factor=name, location=s)
        return _exp(z0[0] * x + z0[1] * y) / g

    def _phi2_terms(self, s0: Any, z0: Point) -> tuple[Any, Iterator[Any]]:
        k = self.kernel

        def e2(s: Any) -> Any:
            return self._exp_over(k.gamma2, s, z0, "gamma2")

        def terms() -> Iterator[Any]:
            product: Any = 1.0
            s = s0
            for _ in count(1):
                product *= self.ratio_G(s)
                s = s - 2
                yield product * (e2(s) - e2(k.zeta(s)))

        return -e2(k.zeta(s0)), terms()

    def _phi1_terms(self, s0: Any, z0: Point) -> tuple[Any, Iterator[Any]]:
        k = self.kernel

        def e1(s: Any) -> Any:
            return self._exp_over(k.gamma1, s, z0, "gamma1")

        def terms() -> Iterator[Any]:
            product: Any = 1.0
            s = s0
            for _ in count(1):
                product *= self.ratio_Gt(s)
                s = s + 2
                yield product * (e1(s) - e1(k.eta(s)))

        return -e1(k.eta(s0)), terms()

    def valid_window(self) -> tuple[float, float]:
        """Open interval of parameters where both boundary transforms converge."""
        k = self.kernel
        crit = k.critical
        return max(k.s_min, crit.s_star2), min(k.s_max, crit.s_star)

    def _check_window(self, s: float) -> None:
        lo, hi = self.valid_window()
        if not lo < s < hi:
            raise DomainError(f"parameter must lie in ({lo}, {hi})", "s", s)

    def _settings(self, tol: float | None) -> SeriesSettings:
        if tol is None:
            return self.settings
        return SeriesSettings(tol=tol, n_max=self.settings.n_max, abs_floor=self.settings.abs_floor)

    def _sum(
        self, first: Any, terms: Iterator[Any], z0: Point, tol: float | None, quantity: str
    ) -> SeriesValue:
        power_law = z0[0] == 0.0 and z0[1] == 0.0
        return sum_series(first, terms, self._settings(tol), quantity, power_law)

    def phi2_series(self, s: float, z0: Point, tol: float | None = None) -> SeriesValue:
        """``phi2(x(s))`` for s in the valid window."""
        _check_point(z0)
        self._check_window(s)
        first, terms = self._phi2_terms(float(s), z0)
        return self._sum(first, terms, z0, tol, f"phi2 at s={s}")

    def phi1_series(self, s: float, z0: Point, tol: float | None = None) -> SeriesValue:
        """``phi1(y(s))`` for s in the valid window."""
        _check_point(z0)
        self._check_window(s)
        first, terms = self._phi1_terms(float(s), z0)
        return self._sum(first, terms, z0, tol, f"phi1 at s={s}")

    def phi2_complex(self, x: complex | float, z0: Point, tol: float | None = None) -> SeriesValue:
        """``phi2(x)`` for ``Re(x) < x_max``, from the ladder based at ``(x, Y+(x))``."""
        _check_point(z0)
        k = self.kernel
        if not x.real < k.x_max:
            raise DomainError(f"Re(x) must be below x_max={k.x_max}", "x", x)
        s0 = x - k.branch_Y(x, 1)
        first, terms = self._phi2_terms(s0, z0)
        return self._sum(first, terms, z0, tol, f"phi2 at x={x}")

    def phi1_complex(self, y: complex | float, z0: Point, tol: float | None = None) -> SeriesValue:
        """``phi1(y)`` for ``Re(y) < y_max``, from the ladder based at ``(X+(y), y)``."""
        _check_point(z0)
        k = self.kernel
        if not y.real < k.y_max:
            raise DomainError(f"Re(y) must be below y_max={k.y_max}", "y", y)
        s0 = k.branch_X(y, 1) - y
        first, terms = self._phi1_terms(s0, z0)
        return self._sum(first, terms, z0, tol, f"phi1 at y={y}")

    def phi2_continued(self, x: complex | float, z0: Point, tol: float | None = None) -> complex:
        """Meromorphic continuation of phi2 through the functional equation at ``(x, Y-(x))``.

        Raises:
            SingularityError: At the pole ``x = x*`` where ``gamma2(x, Y-(x)) = 0``
        """
        _check_point(z0)
        k = self.kernel
        if not x.real < k.x_max + min(k.mu1, k.mu2):
            raise DomainError("Re(x) is beyond the continuation domain", "x", x)
        if x.imag == 0 and x.real >= k.x_max:
            raise DomainError("x lies on the branch cut", "x", x)
        y = k.branch_Y(x, -1)
        g2 = k.gamma2(x, y)
        if abs(g2) <= SINGULAR_TOL * (1 + abs(x)):
            raise SingularityError(
                "phi2 has a pole here", factor="gamma2", location=k.critical.x_star
            )
        phi1 = self.phi1_complex(y, z0, tol)
        return complex((-k.gamma1(x, y) * phi1.value - _exp(z0[0] * x + z0[1] * y)) / g2)

    def phi1_continued(self, y: complex | float, z0: Point, tol: float | None = None) -> complex:
        """Continuation of phi1 through the functional equation at ``(X-(y), y)``."""
        _check_point(z0)
        k = self.kernel
        if not y.real < k.y_max + min(k.mu1, k.mu2):
            raise DomainError("Re(y) is beyond the continuation domain", "y", y)
        if y.imag == 0 and y.real >= k.y_max:
            raise DomainError("y lies on the branch cut", "y", y)
        x = k.branch_X(y, -1)
        g1 = k.gamma1(x, y)
        if abs(g1) <= SINGULAR_TOL * (1 + abs(y)):
            raise SingularityError(
                "phi1 has a pole here", factor="gamma1", location=k.critical.y_star2
            )
        phi2 = self.phi2_complex(x, z0, tol)
        return complex((-k.gamma2(x, y) * phi2.value - _exp(z0[0] * x + z0[1] * y)) / g1)

    def _numerator(self, x: Any, y: Any, z0: Point, tol: float | None) -> Any:
        k = self.kernel
        phi1 = self.phi1_complex(y, z0, tol).value
        phi2 = self.phi2_complex(x, z0, tol).value
        return k.gamma1(x, y) * phi1 + k.gamma2(x, y) * phi2 + _exp(z0[0] * x + z0[1] * y)

    def phi_interior(
        self, x: complex | float, y: complex | float, z0: Point, tol: float | None = None
    ) -> complex:
        """Laplace transform of the Green measure from the functional equation.

        On the parabola the numerator must vanish as well; the value is then the
        limit ``-dN/dy / (dgamma/dy)`` with the numerator derivative taken by a
        central difference.

        Raises:
            NumericalConsistencyError: If the numerator does not vanish on the parabola
        """
        _check_point(z0)
        if not (x.real < 0 and y.real < 0):
            raise DomainError("both arguments need negative real parts", "(x, y)", (x, y))
        k = self.kernel
        gamma = k.gamma(x, y)
        numerator = self._numerator(x, y, z0, tol)
        scale = 1 + abs(x) + abs(y)
        if abs(gamma) > ON_PARABOLA_TOL * scale:
            return complex(-numerator / gamma)

        if abs(numerator) > NUMERATOR_TOL * scale:
            raise NumericalConsistencyError(
                "functional_equation_numerator", abs(numerator), NUMERATOR_TOL * scale
            )
        h = 1e-5 * scale
        if abs(k.gamma_dy(x, y)) > abs(k.gamma_dx(x, y)):
            dn = (self._numerator(x, y + h, z0, tol) - self._numerator(x, y - h, z0, tol)) / (2 * h)
            return complex(-dn / k.gamma_dy(x, y))
        dn = (self._numerator(x + h, y, z0, tol) - self._numerator(x - h, y, z0, tol)) / (2 * h)
        return complex(-dn / k.gamma_dx(x, y))

    def recursion_residual(self, s: float, z0: Point, tol: float | None = None) -> float:
        """Relative residual of the one-step compensation recursion at ``s``.

        Compares ``phi2(x(s))`` with
        ``G(s) phi2(x(s - 2)) + G(s) e(s - 2)/gamma2(s - 2) - e(zeta s)/gamma2(zeta s)``,
        evaluating ``phi2(x(s - 2))`` through the complex-variable form.
        """
        k = self.kernel
        lhs = self.phi2_series(s, z0, tol).value
        shifted = self.phi2_complex(k.x_of_s(s - 2), z0, tol).value
        g = self.ratio_G(s)
        rhs = (
            g * shifted
            + g * self._exp_over(k.gamma2, s - 2, z0, "gamma2")
            - self._exp_over(k.gamma2, k.zeta(s), z0, "gamma2")
        )
        return abs(lhs - rhs) / max(abs(lhs), 1e-300)

    # harmonic functions

    def _coefficients(
        self, s0: float, start: int, direction: int, length: int
    ) -> ExponentialSum:
        """Coefficients from ``c_start = 1`` along one direction of the ladder.

        Upward: ``c_{2n+1} = -gamma2(z_{2n})/gamma2(z_{2n+1}) c_{2n}`` and
        ``c_{2n+2} = -gamma1(z_{2n+1})/gamma1(z_{2n+2}) c_{2n+1}``. Downward the
        roles of the forms are exchanged so that neighbours sharing a coordinate
        cancel on the matching face.
        """
        k = self.kernel
        if direction > 0:
            m_lo, m_hi = start, start + length - 1
        else:
            m_lo, m_hi = start - length + 1, start
        m, a, b = k.ladder_arrays(s0, m_lo, m_hi)
        if direction < 0:
            m, a, b = m[::-1], a[::-1], b[::-1]

        g1 = k.gamma1(a, b)
        g2 = k.gamma2(a, b)
        even = m[:-1] % 2 == 0
        # form linking index m to its successor in this direction
        use_g2 = even if direction > 0 else ~even
        top = np.where(use_g2, g2[:-1], g1[:-1])
        bottom = np.where(use_g2, g2[1:], g1[1:])
        singular = np.abs(bottom) <= SINGULAR_TOL
        if singular.any():
            i = int(np.argmax(singular))
            factor = "gamma2" if use_g2[i] else "gamma1"
            raise SingularityError(
                f"{factor} vanishes at ladder index {int(m[i + 1])}",
                factor=factor,
                location=int(m[i + 1]),
            )
        c = np.concatenate(([1.0], np.cumprod(-top / bottom)))
        return ExponentialSum(m=m, c=c, a=a, b=b)

    def _ladder_sum(self, s0: float, length: int) -> ExponentialSum:
        """Two-sided sum with ``kappa_0 = 1`` based at parameter ``s0``."""
        up = self._coefficients(s0, 0, +1, length + 1)
        down = self._coefficients(s0, 0, -1, length + 1)
        return ExponentialSum(
            m=np.concatenate((up.m, down.m[1:])),
            c=np.concatenate((up.c, down.c[1:])),
            a=np.concatenate((up.a, down.a[1:])),
            b=np.concatenate((up.b, down.b[1:])),
        )

    def _derivative_components(
        self, s_end: float, sign: float, length: int, limit: float
    ) -> tuple[tuple[ExponentialSum, ...], tuple[float, ...]]:
        """Richardson-weighted central differences of the ladder sum in ``s``."""
        scale = min(1.0, limit / (4 * DERIVATIVE_STEPS[0]))
        components: list[ExponentialSum] = []
        weights: list[float] = []
        for step, weight in zip(DERIVATIVE_STEPS, DERIVATIVE_WEIGHTS, strict=True):
            h = step * scale
            for side in (+1, -1):
                components.append(self._ladder_sum(s_end + side * h, length))
                weights.append(sign * side * weight / (2 * h))
        return tuple(components), tuple(weights)

    def case_for(self, alpha: float) -> HarmonicCase:
        """Construction used for ``h_alpha``.

        Raises:
            DomainError: If alpha lies outside ``[alpha*, alpha**]``
        """
        k = self.kernel
        crit = k.critical
        if not crit.alpha_star - ANGLE_TOL <= alpha <= crit.alpha_star2 + ANGLE_TOL:
            raise DomainError(
                f"angle must lie in [{crit.alpha_star}, {crit.alpha_star2}]", "alpha", alpha
            )
        if abs(alpha - crit.alpha_mu) <= ANGLE_TOL:
            return HarmonicCase.DRIFT_CONSTANT
        if abs(alpha - crit.alpha_star) <= ANGLE_TOL:
            if crit.pole_phi2:
                return HarmonicCase.STAR_POLE
            if crit.double_root_phi2:
                return HarmonicCase.STAR_DOUBLE
            return HarmonicCase.STAR_DERIVATIVE
        if abs(alpha - crit.alpha_star2) <= ANGLE_TOL:
            if crit.pole_phi1:
                return HarmonicCase.STAR2_POLE
            if crit.double_root_phi1:
                return HarmonicCase.STAR2_DOUBLE
            return HarmonicCase.STAR2_DERIVATIVE
        return HarmonicCase.INTERIOR

    def harmonic(self, alpha: float, n_terms: int | None = None) -> MartinHarmonic:
        """Martin harmonic function ``h_alpha`` with ``n_terms`` ladder indices per side."""
        k = self.kernel
        crit = k.critical
        length = n_terms or self.harmonic_terms
        case = self.case_for(alpha)
        one = ExponentialSum(
            m=np.zeros(1, dtype=int), c=np.ones(1), a=np.zeros(1), b=np.zeros(1)
        )

        match case:
            case HarmonicCase.DRIFT_CONSTANT:
                components, weights = (one,), (1.0,)
            case HarmonicCase.INTERIOR:
                components = (self._ladder_sum(k.s_of_alpha(alpha), length),)
                weights = (1.0,)
            case HarmonicCase.STAR_POLE:
                components = (self._coefficients(crit.s_star, 1, +1, length),)
                weights = (1.0,)
            case HarmonicCase.STAR2_POLE:
                components = (self._coefficients(crit.s_star2, -1, -1, length),)
                weights = (1.0,)
            case HarmonicCase.STAR_DOUBLE:
                components = (
                    self._coefficients(k.s_max, 0, -1, length + 1),
                    self._coefficients(k.s_max, 1, +1, length),
                )
                weights = (1.0, 1.0)
            case HarmonicCase.STAR2_DOUBLE:
                components = (
                    self._coefficients(k.s_min, 0, +1, length + 1),
                    self._coefficients(k.s_min, -1, -1, length),
                )
                weights = (1.0, 1.0)
            case HarmonicCase.STAR_DERIVATIVE:
                components, weights = self._derivative_components(
                    k.s_max, -1.0, length, crit.s_star - k.s_max
                )
            case HarmonicCase.STAR2_DERIVATIVE:
                components, weights = self._derivative_components(
                    k.s_min, 1.0, length, k.s_min - crit.s_star2
                )

        logger.debug(
            f"Built h_alpha for alpha={alpha:.6f} as {case.value} with {len(components)} component(s)"
        )
        return MartinHarmonic(
            alpha=alpha,
            case_tag=case,
            components=components,
            weights=weights,
            r1=k.r1,
            r2=k.r2,
            tol=self.settings.tol,
        )

    def kappa(self, m: int, alpha: float) -> float:
        """Coefficient ``kappa_m`` of the interior harmonic function ``h_alpha``.

        Raises:
            DomainError: If alpha is not strictly between alpha* and alpha**
            SingularityError: If a reflection form vanishes on the ladder
        """
        crit = self.kernel.critical
        if not crit.alpha_star < alpha < crit.alpha_star2:
            raise DomainError(
                f"angle must lie in ({crit.alpha_star}, {crit.alpha_star2})", "alpha", alpha
            )
        if m == 0:
            return 1.0
        if abs(alpha - crit.alpha_mu) <= ANGLE_TOL:
            return 0.0
        s0 = self.kernel.s_of_alpha(alpha)
        direction = 1 if m > 0 else -1
        coefficients = self._coefficients(s0, 0, direction, abs(m) + 1)
        return float(coefficients.c[-1])

    def h_alpha(self, z0: Point, alpha: float, tol: float | None = None) -> HarmonicEval:
        """Value of the Martin harmonic function ``h_alpha`` at ``z0``."""
        _check_point(z0)
        harmonic = self.harmonic(alpha)
        value = harmonic.series(z0[0], z0[1], self._settings(tol))
        if not value.converged:
            logger.warning(f"h_alpha at alpha={alpha:.6f}, z0={z0} not converged")
        return HarmonicEval(
            alpha=min(max(alpha, 0.0), math.pi / 2),
            z0=(float(z0[0]), float(z0[1])),
            value=value.real,
            case_tag=harmonic.case_tag,
            n_terms=value.n_terms,
            tail_bound=value.tail_bound,
            converged=value.converged,
        )

    def boundary_residuals(
        self, alpha: float, n_terms: int, xs: np.ndarray, ys: np.ndarray
    ) -> dict[str, np.ndarray]:
        """Boundary-condition residuals of the ``n_terms`` truncation of ``h_alpha``."""
        return self.harmonic(alpha, n_terms + 2).boundary_residuals(n_terms, xs, ys)

    # poles

    def _richardson_limit(
        self, f: Callable[[float], complex], steps: tuple[float, ...]
    ) -> tuple[float, float]:
        """Limit at 0 of a function smooth in its step, with a self-consistency estimate."""
        v = [f(d).real for d in steps]
        r1 = 2 * v[1] - v[0]
        r2 = 2 * v[2] - v[1]
        limit = (4 * r2 - r1) / 3
        return limit, abs(limit - r2)

    def residue_phi2(self, z0: Point, tol: float | None = None) -> tuple[float, float]:
        """Residue of phi2 at ``x*`` by extrapolating ``(x - x*) phi2(x)`` as ``x -> x*-``.

        Returns the residue and the extrapolation self-consistency estimate.
        """
        crit = self.kernel.critical
        if not crit.pole_phi2:
            raise DomainError("phi2 has no pole for this model", "pole_phi2", False)
        x_star = crit.x_star
        ratio = min(1.0, (self.kernel.x_max - x_star) / 10 / RESIDUE_STEPS[0])
        steps = tuple(d * ratio for d in RESIDUE_STEPS)
        return self._richardson_limit(
            lambda d: -d * self.phi2_continued(x_star - d, z0, tol), steps
        )

    def residue_phi1(self, z0: Point, tol: float | None = None) -> tuple[float, float]:
        """Residue of phi1 at ``y**`` (mirror of :meth:`residue_phi2`)."""
        crit = self.kernel.critical
        if not crit.pole_phi1:
            raise DomainError("phi1 has no pole for this model", "pole_phi1", False)
        y_star2 = crit.y_star2
        ratio = min(1.0, (self.kernel.y_max - y_star2) / 10 / RESIDUE_STEPS[0])
        steps = tuple(d * ratio for d in RESIDUE_STEPS)
        return self._richardson_limit(
            lambda d: -d * self.phi1_continued(y_star2 - d, z0, tol), steps
        )

    def residue_phi2_closed_form(self, z0: Point) -> float:
        """``x'(s*) h_{alpha*}(z0) / gamma2(z'(zeta s*))``."""
        k = self.kernel
        crit = k.critical
        if not crit.pole_phi2:
            raise DomainError("phi2 has no pole for this model", "pole_phi2", False)
        u = k.zeta(crit.s_star)
        h = self.h_alpha(z0, crit.alpha_star).value
        return k.dx_ds(crit.s_star) * h / k.gamma2(k.dx_ds(u), k.dy_ds(u))

    def residue_phi1_closed_form(self, z0: Point) -> float:
        """``y'(s**) h_{alpha**}(z0) / gamma1(z'(eta s**))``."""
        k = self.kernel
        crit = k.critical
        if not crit.pole_phi1:
            raise DomainError("phi1 has no pole for this model", "pole_phi1", False)
        u = k.eta(crit.s_star2)
        h = self.h_alpha(z0, crit.alpha_star2).value
        return k.dy_ds(crit.s_star2) * h / k.gamma1(k.dx_ds(u), k.dy_ds(u))

    def star_constant(self) -> float:
        """``c* = -gamma2(x*, y*)/gamma_y(x*, y*) x'(s*)/gamma2(z'(zeta s*))``."""
        k = self.kernel
        crit = k.critical
        if not crit.pole_phi2:
            raise DomainError("phi2 has no pole for this model", "pole_phi2", False)
        u = k.zeta(crit.s_star)
        ratio = k.gamma2(crit.x_star, crit.y_star) / k.gamma_dy(crit.x_star, crit.y_star)
        return -ratio * k.dx_ds(crit.s_star) / k.gamma2(k.dx_ds(u), k.dy_ds(u))

    def star2_constant(self) -> float:
        """``c** = -gamma1(x**, y**)/gamma_x(x**, y**) y'(s**)/gamma1(z'(eta s**))``."""
        k = self.kernel
        crit = k.critical
        if not crit.pole_phi1:
            raise DomainError("phi1 has no pole for this model", "pole_phi1", False)
        u = k.eta(crit.s_star2)
        ratio = k.gamma1(crit.x_star2, crit.y_star2) / k.gamma_dx(crit.x_star2, crit.y_star2)
        return -ratio * k.dy_ds(crit.s_star2) / k.gamma1(k.dx_ds(u), k.dy_ds(u))

    def product_G(self, s: float, n_values: np.ndarray) -> np.ndarray:
        """Partial products ``prod_{k<n} G(s - 2k)`` at the requested n."""
        n_values = np.asarray(n_values, dtype=int)
        n_top = int(n_values.max())
        ratios = np.array([self.ratio_G(s - 2 * j) for j in range(n_top)], dtype=float)
        partial = np.concatenate(([1.0], np.cumprod(ratios)))
        return partial[n_values]
