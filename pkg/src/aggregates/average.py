"""
AVG Estimator

AVG = E[Y / Z], where Y is the realized sum and Z the realized element count.
E[Y] / E[Z] is in general a poor stand-in, so two regimes are used:

- Long streams (COUNT >= c): SUM / COUNT is within epsilon of AVG.
- Short streams: a dynamic program over Z restricted to the band
  |Z_j - E[Z_j]| <= w at every prefix j. A_z holds Pr[Z = z, in band] and
  B_z holds the expected Y on that event; the estimate is sum_{z >= 1} B_z / z.

Both candidates are maintained during the single pass and the branch is picked
at the end.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Literal

import numpy as np
from pydantic import Field

from src.aggregates.base import StreamEstimator
from src.aggregates.exact import CountEstimator, SumEstimator
from src.core.exceptions import ConfigurationError, UndefinedAverage
from src.core.logging import get_logger
from src.model.schemas import BaseSchema, ProbItem, ProbStream
from src.model.validation import cond_mean, p_bot

logger = get_logger(__name__)

Precision = Literal["double", "exact"]

# Domain bound used for the band sizing when n is not known up front.
# c and w grow with n, so an upper bound only widens the band.
UNKNOWN_DOMAIN_BOUND = 2**63 - 1


class AvgConfig(BaseSchema):
    """Regime threshold c and band half-width w for one (epsilon, n, m)"""

    epsilon: float = Field(gt=0.0, lt=1.0)
    n: int = Field(ge=1)
    m: int = Field(ge=1)

    @property
    def c(self) -> float:
        return 12.0 / self.epsilon**2 * math.log(10.0 * self.n * self.m / self.epsilon)

    @property
    def w(self) -> float:
        return self.epsilon * self.c


class AvgDpState:
    """
    Banded dynamic program over the realized element count.

    The band is a contiguous run of z values starting at ``lo``; entries
    outside |z - E[Z_j]| <= w are dropped after every item. With
    ``precision="exact"`` all arithmetic is carried in ``Fraction``.
    """

    def __init__(self, w: float, precision: Precision = "double"):
        if not w > 0:
            raise ConfigurationError(f"band half-width must be positive, got {w!r}")
        if precision not in ("double", "exact"):
            raise ConfigurationError(f"unknown precision {precision!r}")

        self.precision = precision
        self._exact = precision == "exact"
        dtype = object if self._exact else np.float64
        one = Fraction(1) if self._exact else 1.0
        zero = Fraction(0) if self._exact else 0.0

        self.w = Fraction(w) if self._exact else float(w)
        self.j = 0
        self.expected_z = zero
        self.lo = 0
        self.A = np.array([one], dtype=dtype)
        self.B = np.array([zero], dtype=dtype)
        self.peak_entries = 1

    def _item_terms(self, item: ProbItem):
        """(p_bot, 1 - p_bot, (1 - p_bot) * conditional mean) in the working precision"""
        if self._exact:
            mass = sum((Fraction(t.prob) for t in item.tuples), Fraction(0))
            bot = min(Fraction(1), max(Fraction(0), 1 - mass))
            q = 1 - bot
            if q == 0 or mass == 0:
                return bot, q, Fraction(0)
            weighted = sum((t.value * Fraction(t.prob) for t in item.tuples), Fraction(0))
            return bot, q, q * (weighted / mass)

        bot = p_bot(item)
        q = 1.0 - bot
        if bot >= 1.0:
            return bot, q, 0.0
        return bot, q, q * cond_mean(item)

    def update(self, item: ProbItem) -> AvgDpState:
        bot, q, q_mean = self._item_terms(item)
        self.j += 1
        self.expected_z = self.expected_z + q

        pad = np.zeros(1, dtype=self.A.dtype)
        stay_a = np.concatenate((self.A, pad))
        step_a = np.concatenate((pad, self.A))
        stay_b = np.concatenate((self.B, pad))
        step_b = np.concatenate((pad, self.B))

        new_a = bot * stay_a + q * step_a
        new_b = bot * stay_b + (q_mean * step_a + q * step_b)

        z = self.lo + np.arange(new_a.shape[0], dtype=np.int64)
        if self._exact:
            z = z.astype(object)
        in_band = np.asarray(np.abs(z - self.expected_z) <= self.w, dtype=bool)
        nonzero = np.asarray((new_a != 0) | (new_b != 0), dtype=bool)
        keep = np.flatnonzero(in_band & nonzero)

        if keep.size == 0:
            self.A = new_a[:0]
            self.B = new_b[:0]
        else:
            first, last = int(keep[0]), int(keep[-1]) + 1
            self.lo += first
            self.A = new_a[first:last]
            self.B = new_b[first:last]
            self.peak_entries = max(self.peak_entries, last - first)
        return self

    @property
    def band(self) -> dict[int, tuple]:
        """Snapshot {z: (A_z, B_z)} of the stored entries"""
        return {self.lo + k: (self.A[k], self.B[k]) for k in range(self.A.shape[0])}

    @property
    def entries(self) -> int:
        return int(self.A.shape[0])

    def probability(self):
        """Pr[in band at every prefix] = sum_z A_z"""
        if self._exact:
            return sum(self.A.tolist(), Fraction(0))
        return math.fsum(self.A.tolist())

    def average(self):
        """sum over z >= 1 of B_z / z"""
        terms = [b / (self.lo + k) for k, b in enumerate(self.B.tolist()) if self.lo + k >= 1]
        if self._exact:
            return sum(terms, Fraction(0))
        return math.fsum(terms)


class AverageEstimator(StreamEstimator):
    """Two-regime single-pass AVG"""

    name = "avg"

    def __init__(
        self,
        epsilon: float,
        m: int,
        n: int | None = None,
        precision: Precision = "double",
    ):
        self.config = AvgConfig(epsilon=epsilon, n=n or UNKNOWN_DOMAIN_BOUND, m=max(1, m))
        if n is None:
            logger.info("AVG sized with an unbounded domain since n is unknown")
        self.count = CountEstimator()
        self.sum = SumEstimator()
        self.dp: AvgDpState | None = AvgDpState(self.config.w, precision)
        self.peak_band = 1
        self._regime: str | None = None
        logger.debug(f"AVG threshold c={self.config.c:.6g}, band half-width w={self.config.w:.6g}")

    def update(self, item: ProbItem) -> None:
        self.count.update(item)
        self.sum.update(item)
        if self.dp is None:
            return

        self.dp.update(item)
        self.peak_band = max(self.peak_band, self.dp.peak_entries)
        # COUNT never decreases, so the regime is settled
        if self.count.total >= self.config.c:
            logger.info(f"AVG switched to SUM/COUNT after {self.dp.j} items; band released")
            self.dp = None

    def result(self) -> float:
        count = self.count.result()
        if count <= 0.0:
            raise UndefinedAverage("every item is all-bottom; AVG is undefined")

        if count >= self.config.c:
            self._regime = "sum_count"
            return self.sum.result() / count

        self._regime = "dp"
        return float(self.dp.average())

    @property
    def variant(self) -> str | None:
        return self._regime

    @property
    def state_sizes(self) -> dict[str, int]:
        return {"avg_band_peak_entries": self.peak_band}


def avg_dp(stream: ProbStream, w: float, precision: Precision = "double") -> AvgDpState:
    """Run the banded DP with half-width w over the whole stream"""
    state = AvgDpState(w, precision)
    for item in stream.items:
        state.update(item)
    return state


def avg(stream: ProbStream, epsilon: float) -> float:
    """
    Deterministic epsilon-approximation of AVG.

    Raises:
        UndefinedAverage: If every item is all-bottom
    """
    return AverageEstimator(epsilon, m=stream.m, n=stream.n).consume(stream.items).result()
