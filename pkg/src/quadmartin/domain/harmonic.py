"""Exponential-sum representation of Martin harmonic functions."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from quadmartin.domain.models import HarmonicCase, SeriesSettings, SeriesValue
from quadmartin.domain.series import sum_series

logger = logging.getLogger(__name__)

# cap on the size of one exp() block when evaluating on point sets
BLOCK_ELEMENTS = 1 << 21


def pair_keys(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Summation groups of the ladder indices.

    Upward indices are grouped as ``0; 1; (2, 3); (4, 5); ...`` (pairs sharing
    ``a``) and downward ones as ``-1; (-3, -2); (-5, -4); ...`` (pairs sharing
    ``b``). Returns the group key of every index and a flag for the upward side.
    """
    up = m >= 0
    key = np.where(up, np.where(m < 2, m, m // 2 + 1), np.where(m == -1, 0, (-m) // 2))
    return key, up


@dataclass(frozen=True)
class ExponentialSum:
    """One component ``sum_m c_m exp(a_m x + b_m y)`` built from a single ladder."""

    m: np.ndarray
    c: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def terms(self, x: float, y: float) -> np.ndarray:
        """Individual terms at a point."""
        return self.c * np.exp(self.a * x + self.b * y)

    def paired(self, x: float, y: float) -> tuple[np.ndarray, np.ndarray]:
        """Grouped term sums of the upward and downward sides, in order."""
        t = self.terms(x, y)
        key, up = pair_keys(self.m)
        sides = []
        for mask in (up, ~up):
            if not mask.any():
                sides.append(np.zeros(1))
                continue
            k = key[mask]
            sides.append(np.bincount(k - k.min(), weights=t[mask]))
        return sides[0], sides[1]

    def series(
        self,
        x: float,
        y: float,
        settings: SeriesSettings,
        quantity: str = "h_alpha",
    ) -> SeriesValue:
        """Value at a point under the truncation rule, each side summed separately."""
        power_law = x == 0.0 and y == 0.0
        up, down = self.paired(x, y)
        upper = sum_series(up[0], iter(up[1:]), settings, f"{quantity} (upward)", power_law)
        lower = sum_series(
            down[0], iter(down[1:]), settings, f"{quantity} (downward)", power_law
        )
        return upper + lower


@dataclass(frozen=True)
class MartinHarmonic:
    """Harmonic function ``h_alpha`` as a weighted combination of exponential sums.

    Interior, pole and double-root cases have one or two unit-weight
    components; the derivative cases combine six sums from neighbouring
    parameters with finite-difference weights.
    """

    alpha: float
    case_tag: HarmonicCase
    components: tuple[ExponentialSum, ...]
    weights: tuple[float, ...]
    r1: float
    r2: float
    tol: float = 1e-12

    def __post_init__(self) -> None:
        """Validate component bookkeeping."""
        if len(self.components) != len(self.weights):
            raise ValueError("Each component needs exactly one weight")
        if not self.components:
            raise ValueError("At least one component is required")

    @property
    def n_terms(self) -> int:
        """Total number of exponentials held."""
        return sum(comp.m.size for comp in self.components)

    def flat(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Weighted coefficients, exponents and ranks ``|m|`` of all components."""
        c = np.concatenate([w * comp.c for w, comp in zip(self.weights, self.components, strict=True)])
        a = np.concatenate([comp.a for comp in self.components])
        b = np.concatenate([comp.b for comp in self.components])
        rank = np.concatenate([np.abs(comp.m) for comp in self.components])
        return c, a, b, rank

    def _retained(
        self, c: np.ndarray, a: np.ndarray, b: np.ndarray, rank: np.ndarray, min_sum: float
    ) -> np.ndarray:
        """Mask of the terms needed on points with ``x + y >= min_sum``.

        A term with ``a, b <= 0`` is at most ``|c| exp(max(a, b) min_sum)`` there;
        whole ranks are dropped from the top while their summed bound stays
        below ``tol * max|c|``.
        """
        nonpositive = (a <= 0) & (b <= 0)
        exponent = np.where(nonpositive, np.maximum(a, b) * min_sum, 0.0)
        bound = np.where(nonpositive, np.abs(c) * np.exp(exponent), np.inf)
        per_rank = np.bincount(rank, weights=bound)
        suffix = np.cumsum(per_rank[::-1])[::-1]
        threshold = self.tol * float(np.max(np.abs(c)))
        below = np.nonzero(suffix <= threshold)[0]
        cutoff = int(below[0]) if below.size else int(rank.max()) + 1
        return rank < cutoff

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Vectorised values at an ``(n, 2)`` array of points of the closed quadrant."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[0] == 0:
            return np.zeros(0)
        c, a, b, rank = self.flat()
        keep = self._retained(c, a, b, rank, float(np.min(pts[:, 0] + pts[:, 1])))
        c, a, b = c[keep], a[keep], b[keep]
        logger.debug(
            f"Evaluating h_alpha (alpha={self.alpha:.6f}) with {c.size} of {keep.size} terms "
            f"on {pts.shape[0]} points"
        )
        block = max(1, BLOCK_ELEMENTS // max(c.size, 1))
        out = np.empty(pts.shape[0])
        for start in range(0, pts.shape[0], block):
            chunk = pts[start : start + block]
            exponent = np.outer(chunk[:, 0], a) + np.outer(chunk[:, 1], b)
            out[start : start + block] = np.exp(exponent) @ c
        return out

    def __call__(self, x: float, y: float) -> float:
        """Value at a single point."""
        return float(self.evaluate(np.array([[x, y]]))[0])

    def series(self, x: float, y: float, settings: SeriesSettings) -> SeriesValue:
        """Value at a point with truncation bookkeeping."""
        total = SeriesValue(0j, 0, 0.0, True)
        for w, comp in zip(self.weights, self.components, strict=True):
            part = comp.series(x, y, settings)
            total = total + SeriesValue(
                value=w * part.value,
                n_terms=part.n_terms,
                tail_bound=abs(w) * part.tail_bound,
                converged=part.converged,
            )
        return total

    def growth_rate(self, theta: float) -> float:
        """Exponential growth rate of ``h(r e_theta)`` as ``r`` grows.

        The largest ``a cos(theta) + b sin(theta)`` over exponents with a
        non-negligible coefficient.
        """
        c, a, b, _ = self.flat()
        significant = np.abs(c) > 1e-10 * float(np.max(np.abs(c)))
        rates = a[significant] * math.cos(theta) + b[significant] * math.sin(theta)
        return float(np.max(rates))

    def boundary_residuals(
        self, n_terms: int, xs: np.ndarray, ys: np.ndarray
    ) -> dict[str, np.ndarray]:
        """Oblique derivatives of the truncation ``|m| <= n_terms`` on both faces.

        Returns residuals ``d_R1 h(0, y)`` on ``ys`` and ``d_R2 h(x, 0)`` on
        ``xs``, with the magnitudes of the first dropped terms
        (``|m| = n_terms + 1``) as bounds.
        """
        if n_terms < 1:
            raise ValueError("n_terms must be positive")
        c, a, b, rank = self.flat()
        if n_terms + 1 > int(rank.max()):
            raise ValueError(f"only {int(rank.max())} ladder terms per side are held")
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        kept = rank <= n_terms
        dropped = rank == n_terms + 1

        g1 = c * (a + self.r1 * b)
        g2 = c * (self.r2 * a + b)
        e_y = np.exp(np.outer(ys, b))
        e_x = np.exp(np.outer(xs, a))
        return {
            "residual_R1": e_y[:, kept] @ g1[kept],
            "bound_R1": np.abs(e_y[:, dropped]) @ np.abs(g1[dropped]),
            "residual_R2": e_x[:, kept] @ g2[kept],
            "bound_R2": np.abs(e_x[:, dropped]) @ np.abs(g2[dropped]),
        }
