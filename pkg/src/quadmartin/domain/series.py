"""Truncation of slowly or rapidly converging series."""

import logging
import math
from collections import deque
from collections.abc import Iterable

from quadmartin.domain.models import SeriesSettings, SeriesValue

logger = logging.getLogger(__name__)

# consecutive small terms required before the tail bound is consulted
SMALL_RUN = 3
RATIO_WINDOW = 5


class DyadicEnvelope:
    """Maxima of ``|t_k|`` over the blocks ``(2, 4], (4, 8], ...`` of term indices.

    Consecutive block maxima give the exponent ``p`` of a power-law envelope
    ``|t_k| <= C k^p`` without being fooled by oscillating or partly
    cancelling terms.
    """

    def __init__(self) -> None:
        """Initialize with the block ``k <= 2`` open."""
        self.blocks: list[float] = []
        self.current = 0.0
        self.edge = 2

    def add(self, k: int, magnitude: float) -> None:
        """Record the magnitude of term ``k`` (indices increase by one)."""
        if k > self.edge:
            self.blocks.append(self.current)
            self.current = 0.0
            self.edge *= 2
        self.current = max(self.current, magnitude)

    def bound(self, n: int) -> float:
        """Majorant of ``sum_{k > n} |t_k|``, or ``inf`` when the envelope is not summable."""
        if len(self.blocks) < 2:
            return math.inf
        before, last = self.blocks[-2], self.blocks[-1]
        if last == 0.0 and self.current == 0.0:
            return 0.0
        if before == 0.0 or last == 0.0:
            return math.inf
        p = math.log(last / before) / math.log(2.0)
        if p >= -1.0:
            return math.inf
        # C k^p covers the last full block (ending at edge/2) and the open one
        c = max(last / (self.edge / 2) ** p, self.current / n**p)
        return c * n ** (p + 1.0) / (-p - 1.0)


def tail_bound(recent: deque[float], n: int, envelope: DyadicEnvelope | None = None) -> float:
    """Majorant of the remaining tail from the most recent term magnitudes.

    Geometric mode fits ``q = max`` of the last term ratios and bounds the tail
    by ``|t_n| q/(1-q)``. Power-law mode (an ``envelope`` is given) uses the
    dyadic block maxima. Returns ``inf`` when no majorant applies.
    """
    if len(recent) >= 2 and recent[-1] == 0.0 and recent[-2] == 0.0:
        return 0.0
    if envelope is not None:
        return envelope.bound(n)
    if len(recent) < RATIO_WINDOW + 1:
        return math.inf
    last = recent[-1]
    ratios = []
    for prev, cur in zip(list(recent)[:-1], list(recent)[1:], strict=True):
        if prev == 0.0:
            if cur == 0.0:
                continue
            return math.inf
        ratios.append(cur / prev)
    if not ratios:
        return 0.0
    q = max(ratios)
    if q >= 1.0:
        return math.inf
    return last * q / (1.0 - q)


def sum_series(
    first: complex | float,
    terms: Iterable[complex | float],
    settings: SeriesSettings,
    quantity: str = "series",
    power_law: bool = False,
) -> SeriesValue:
    """Sum ``first + sum(terms)`` under the truncation rule.

    Stops once ``SMALL_RUN`` consecutive terms fall below
    ``tol * max(|S|, abs_floor)`` and the tail majorant is below the same
    threshold, or after ``n_max`` terms (flagged as not converged).
    """
    total: complex | float = first
    n_terms = 1
    small = 0
    recent: deque[float] = deque([abs(first)], maxlen=RATIO_WINDOW + 1)
    envelope = DyadicEnvelope() if power_law else None
    tail = math.inf
    converged = False

    for term in terms:
        if n_terms >= settings.n_max:
            break
        total += term
        n_terms += 1
        magnitude = abs(term)
        recent.append(magnitude)
        if envelope is not None:
            envelope.add(n_terms - 1, magnitude)
        threshold = settings.tol * max(abs(total), settings.abs_floor)
        small = small + 1 if magnitude <= threshold else 0
        if small >= SMALL_RUN:
            tail = tail_bound(recent, n_terms - 1, envelope)
            if tail <= threshold:
                converged = True
                break
    else:
        tail = tail_bound(recent, n_terms - 1, envelope) if len(recent) >= 2 else 0.0
        converged = tail <= settings.tol * max(abs(total), settings.abs_floor)
    if not converged and n_terms >= settings.n_max:
        tail = tail_bound(recent, n_terms - 1, envelope)
    if not converged:
        logger.warning(
            f"{quantity} did not converge after {n_terms} terms (tail bound {tail:.3e})"
        )
    return SeriesValue(
        value=complex(total),
        n_terms=n_terms,
        tail_bound=tail if math.isfinite(tail) else float("inf"),
        converged=converged,
    )
