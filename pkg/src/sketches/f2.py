"""
Second frequency moment (F2) tug-of-war sketch.

A grid of ``depth x width`` accumulators, each with its own 4-wise
independent +/-1 hash. An update (j, w) adds sign(j) * w to every
accumulator, so the state is a linear function of the weight vector and
fractional weights are accepted. The estimate is the median over rows of
the mean squared accumulator within the row.
"""

from __future__ import annotations

import math

import numpy as np

from src.core.config import settings
from src.core.exceptions import ConfigurationError, ValueOutOfDomain
from src.core.logging import get_logger
from src.sketches.hashing import F2_SIGN_KEY, PolynomialHash, derive_rng

logger = get_logger(__name__)


class F2Sketch:
    """Linear sketch estimating the sum of squared coordinate weights"""

    def __init__(self, epsilon: float, delta: float, n: int, seed: int = 0):
        """
        Initialize an empty sketch.

        Args:
            epsilon: Target relative error
            delta: Target failure probability
            n: Domain size; updates must lie in [1, n]
            seed: Master seed for the sign hashes
        """
        if not (0.0 < epsilon < 1.0 and 0.0 < delta < 1.0):
            raise ConfigurationError(f"F2 sketch needs epsilon, delta in (0, 1), got {epsilon}, {delta}")

        self.epsilon = epsilon
        self.delta = delta
        self.n = n
        self.seed = seed
        self.width = math.ceil(settings.ams_width_constant / epsilon**2)
        self.depth = max(1, math.ceil(settings.ams_depth_constant * math.log(1.0 / delta)))

        self._signs = PolynomialHash(4, (self.depth, self.width), derive_rng(seed, F2_SIGN_KEY))
        self.counters = np.zeros((self.depth, self.width), dtype=np.float64)

        logger.debug(f"F2Sketch initialized (eps={epsilon}, delta={delta}, grid={self.depth}x{self.width})")

    def update(self, j: int, w: float) -> F2Sketch:
        """
        Add weight w to coordinate j.

        Raises:
            ValueOutOfDomain: If j is outside [1, n]
            ConfigurationError: If w is not finite
        """
        if not 1 <= j <= self.n:
            raise ValueOutOfDomain(f"coordinate {j} outside [1, {self.n}]")
        if not math.isfinite(w):
            raise ConfigurationError(f"F2 update weight must be finite, got {w!r}")

        self.counters += self._signs.signs(j) * w
        return self

    def estimate(self) -> float:
        """Median over rows of the mean squared accumulator"""
        row_means = np.mean(self.counters**2, axis=1)
        return float(np.median(row_means))

    def merge(self, other: F2Sketch) -> F2Sketch:
        """
        Add another sketch's state into this one.

        Both sketches must share parameters and seed, so that the result
        equals the sketch of the summed weight vectors.
        """
        if (self.width, self.depth, self.seed, self.n) != (other.width, other.depth, other.seed, other.n):
            raise ConfigurationError("F2 sketches can only be merged when built with the same parameters and seed")
        self.counters += other.counters
        return self

    @property
    def size(self) -> int:
        """Number of accumulators"""
        return self.depth * self.width


def f2_update(sk: F2Sketch, j: int, w: float) -> F2Sketch:
    """Add weight w to coordinate j"""
    return sk.update(j, w)


def f2_estimate(sk: F2Sketch) -> float:
    """Current F2 estimate"""
    return sk.estimate()
