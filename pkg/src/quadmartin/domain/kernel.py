"""Algebraic geometry of the kernel for a normalized model.

The kernel ``gamma(x, y) = (x - y)^2/2 + mu1 x + mu2 y`` vanishes on a parabola
parameterised by ``s = x - y``::

    x(s) = -s (s - 2 mu2) / 2,    y(s) = -s (s + 2 mu1) / 2

The involutions ``zeta`` (fixing x) and ``eta`` (fixing y) act on the parameter
as ``s -> 2 mu2 - s`` and ``s -> -2 mu1 - s``; their composition is a shift by 2.
"""

import cmath
import logging
import math
from functools import cached_property
from typing import Any, TypeVar

import numpy as np

from quadmartin.domain.models import CriticalData, LadderPoint, NormalizedModel, SPoint
from quadmartin.shared.exceptions import DomainError

logger = logging.getLogger(__name__)

Num = TypeVar("Num", float, complex, np.ndarray)

PARABOLA_TOL = 1e-10
DOUBLE_ROOT_TOL = 1e-12
ANGLE_TOL = 1e-12


def csqrt(z: Any) -> Any:
    """Principal square root, complex-valued for negative real input.

    Holomorphic off the negative real axis of the radicand and nonnegative on
    nonnegative reals.
    """
    if isinstance(z, np.ndarray):
        return np.emath.sqrt(z)
    if isinstance(z, complex):
        return cmath.sqrt(z)
    if z >= 0:
        return math.sqrt(z)
    return cmath.sqrt(z)


class Kernel:
    """Kernel, branches, parabola and critical data of a normalized model."""

    def __init__(self, model: NormalizedModel) -> None:
        """Initialize kernel for a normalized model."""
        self.model = model
        self.mu1 = model.mu1
        self.mu2 = model.mu2
        self.r1 = model.r1
        self.r2 = model.r2

    def __repr__(self) -> str:
        return f"Kernel(mu1={self.mu1}, mu2={self.mu2}, r1={self.r1}, r2={self.r2})"

    # kernel and reflection forms

    def gamma(self, x: Num, y: Num) -> Num:
        """Kernel ``(x - y)^2/2 + mu1 x + mu2 y``."""
        return 0.5 * (x - y) ** 2 + self.mu1 * x + self.mu2 * y

    def gamma1(self, x: Num, y: Num) -> Num:
        """Reflection form of the vertical face, ``x + r1 y``."""
        return x + self.r1 * y

    def gamma2(self, x: Num, y: Num) -> Num:
        """Reflection form of the horizontal face, ``r2 x + y``."""
        return self.r2 * x + y

    def gamma_dx(self, x: Num, y: Num) -> Num:
        """Partial derivative of the kernel in x."""
        return x - y + self.mu1

    def gamma_dy(self, x: Num, y: Num) -> Num:
        """Partial derivative of the kernel in y."""
        return y - x + self.mu2

    # branches

    def branch_Y(self, x: Num, sign: int = 1) -> Num:
        """Root ``Y±(x) = x - mu2 ± sqrt(mu2^2 - 2x)`` of ``gamma(x, .)``."""
        return x - self.mu2 + sign * csqrt(self.mu2**2 - 2 * x)

    def branch_X(self, y: Num, sign: int = 1) -> Num:
        """Root ``X±(y) = y - mu1 ± sqrt(mu1^2 - 2y)`` of ``gamma(., y)``."""
        return y - self.mu1 + sign * csqrt(self.mu1**2 - 2 * y)

    @property
    def x_max(self) -> float:
        """Branch point of Y±."""
        return self.mu2**2 / 2

    @property
    def y_max(self) -> float:
        """Branch point of X±."""
        return self.mu1**2 / 2

    # parabola

    @property
    def s_min(self) -> float:
        """Parameter of the branch point of X±."""
        return -self.mu1

    @property
    def s_max(self) -> float:
        """Parameter of the branch point of Y±."""
        return self.mu2

    def x_of_s(self, s: Num) -> Num:
        """First coordinate of the parabola point with parameter s."""
        return -0.5 * s * (s - 2 * self.mu2)

    def y_of_s(self, s: Num) -> Num:
        """Second coordinate of the parabola point with parameter s."""
        return -0.5 * s * (s + 2 * self.mu1)

    def dx_ds(self, s: Num) -> Num:
        """Derivative of x(s)."""
        return -s + self.mu2

    def dy_ds(self, s: Num) -> Num:
        """Derivative of y(s)."""
        return -s - self.mu1

    def parabola(self, s: float) -> SPoint:
        """Parabola point with parameter s."""
        return SPoint(s=s, x=self.x_of_s(s), y=self.y_of_s(s))

    def point(self, s: Any) -> tuple[Any, Any]:
        """Coordinates of the parabola point with parameter s (real or complex)."""
        return self.x_of_s(s), self.y_of_s(s)

    def zeta(self, s: Num) -> Num:
        """Involution fixing the first coordinate."""
        return -s + 2 * self.mu2

    def eta(self, s: Num) -> Num:
        """Involution fixing the second coordinate."""
        return -s - 2 * self.mu1

    @staticmethod
    def shift(s: Num, n: int) -> Num:
        """Ladder shift ``s + 2n`` (the composition of the two involutions)."""
        return s + 2 * n

    # compensation ladder

    def on_parabola(self, a: Any, b: Any, tol: float = PARABOLA_TOL) -> bool:
        """Check ``gamma(a, b) = 0`` within ``tol (1 + |a| + |b|)``."""
        return abs(self.gamma(a, b)) <= tol * (1 + abs(a) + abs(b))

    def ladder_s(self, s0: Any, m: int) -> Any:
        """Parabola parameter of the ladder point of index m from base parameter s0."""
        n, odd = divmod(m, 2)
        s = self.shift(s0, -n)
        return self.zeta(s) if odd else s

    def ladder(self, a0: Any, b0: Any, m: int) -> LadderPoint:
        """Ladder point ``(a_m, b_m)`` started at ``(a0, b0)`` on the parabola.

        Even indices step along the parabola by ``s -> s - 2`` and odd ones are
        their images under ``zeta``, so ``a_{2n+1} = a_{2n}`` and
        ``b_{2n+1} = b_{2n+2}``.

        Raises:
            DomainError: If ``(a0, b0)`` is not on the parabola
        """
        if not self.on_parabola(a0, b0):
            raise DomainError(
                f"base point ({a0}, {b0}) is not on the parabola",
                "(a0, b0)",
                (a0, b0),
            )
        a, b = self.point(self.ladder_s(a0 - b0, m))
        return LadderPoint(m=m, a=a, b=b)

    def ladder_arrays(self, s0: float, m_lo: int, m_hi: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Indices and exponents ``(m, a_m, b_m)`` for ``m_lo <= m <= m_hi``."""
        m = np.arange(m_lo, m_hi + 1)
        n, odd = np.divmod(m, 2)
        s = s0 - 2.0 * n
        s = np.where(odd == 1, self.zeta(s), s)
        return m, self.x_of_s(s), self.y_of_s(s)

    # angles and saddle point

    def _check_alpha(self, alpha: float) -> None:
        if not 0.0 <= alpha <= math.pi / 2:
            raise DomainError("angle must lie in [0, pi/2]", "alpha", alpha)

    def s_of_alpha(self, alpha: float) -> float:
        """Parameter of the saddle point in direction alpha.

        ``(mu2 - tan(alpha) mu1)/(1 + tan(alpha))``, written with sine and cosine
        so that ``pi/2`` maps to ``s_min`` without overflow.
        """
        self._check_alpha(alpha)
        if alpha == 0.0:
            return self.s_max
        if alpha == math.pi / 2:
            return self.s_min
        c, s = math.cos(alpha), math.sin(alpha)
        return (self.mu2 * c - self.mu1 * s) / (c + s)

    def alpha_of_s(self, s: float) -> float:
        """Inverse of :meth:`s_of_alpha`: ``arctan((mu2 - s)/(s + mu1))``."""
        if not self.s_min - ANGLE_TOL <= s <= self.s_max + ANGLE_TOL:
            raise DomainError(
                f"parameter must lie in [{self.s_min}, {self.s_max}]", "s", s
            )
        s = min(max(s, self.s_min), self.s_max)
        return math.atan2(self.mu2 - s, s + self.mu1)

    @staticmethod
    def ds_dalpha(alpha: float) -> float:
        """Derivative of :meth:`s_of_alpha`, ``-1/(cos(alpha) + sin(alpha))^2``."""
        return -1.0 / (math.cos(alpha) + math.sin(alpha)) ** 2

    def saddle(self, alpha: float) -> SPoint:
        """Maximiser of ``cos(alpha) x + sin(alpha) y`` over the parabola."""
        return self.parabola(self.s_of_alpha(alpha))

    @property
    def alpha_mu(self) -> float:
        """Angle of the drift."""
        return math.atan2(self.mu2, self.mu1)

    @property
    def convergence_exponent(self) -> float:
        """Exponent e with ``prod_{k<n} G(s - 2k) ~ C n^e``."""
        return 2.0 - 2.0 * (1.0 / (1.0 + self.r1) + 1.0 / (1.0 + self.r2))

    # critical data

    @cached_property
    def critical(self) -> CriticalData:
        """Critical parameters, poles and angles (computed once)."""
        return self.critical_points()

    def critical_points(self) -> CriticalData:
        """Critical parameters, pole flags and critical angles.

        The pole of phi2 sits at ``x* = x(s*)`` with ``s* = 2/(1 + r2)`` when
        ``s* < s_max``; the pole of phi1 at ``y** = y(s**)`` with
        ``s** = -2/(1 + r1)`` when ``s** > s_min``.
        """
        s_star = 2.0 / (1.0 + self.r2)
        s_star2 = -2.0 / (1.0 + self.r1)
        double2 = abs(s_star - self.s_max) <= DOUBLE_ROOT_TOL
        double1 = abs(s_star2 - self.s_min) <= DOUBLE_ROOT_TOL
        pole2 = s_star < self.s_max and not double2
        pole1 = s_star2 > self.s_min and not double1

        x_star = self.x_of_s(s_star)
        y_star = self.branch_Y(x_star, 1)
        y_star2 = self.y_of_s(s_star2)
        x_star2 = self.branch_X(y_star2, 1)

        data = CriticalData(
            s_star=s_star,
            s_star2=s_star2,
            x_star=x_star,
            y_star=_real(y_star),
            x_star2=_real(x_star2),
            y_star2=y_star2,
            alpha_star=self.alpha_of_s(s_star) if pole2 else 0.0,
            alpha_star2=self.alpha_of_s(s_star2) if pole1 else math.pi / 2,
            pole_phi2=pole2,
            pole_phi1=pole1,
            double_root_phi2=double2,
            double_root_phi1=double1,
            x_max=self.x_max,
            y_max=self.y_max,
            alpha_mu=self.alpha_mu,
        )
        logger.debug(f"Critical data for {self!r}: {data}")
        return data


def _real(value: complex | float) -> float:
    """Real part of a branch value that is real at the critical points."""
    return value.real if isinstance(value, complex) else value
