"""
Distinct-element (F0) counter by bucket sampling.

Every coordinate gets a geometric level from a pairwise-independent hash.
A repetition keeps the coordinates whose level reaches its current sampling
level; when more than ``capacity`` are kept the level rises and the estimate
is ``kept * 2**level``. The median over repetitions is the lane's estimate.

The sketch is vectorized over ``lanes``: independent sketches that share the
domain but own their hash functions and their own input (an insert may target
any subset of lanes). A single sketch is simply ``lanes=1``.

Until some repetition overflows, all repetitions of a lane hold every
inserted coordinate and the estimate is the exact distinct count; levels are
only hashed once sampling starts. While sampling, a (coordinate, lane)
membership is stored only if some repetition of that lane keeps it, so state
stays within lanes * repetitions * (capacity + 1) entries.

A lane's estimate is floored at its value just before each level raise, so
estimates never decrease as inserts accumulate.
"""

from __future__ import annotations

import math

import numpy as np

from src.core.config import settings
from src.core.exceptions import ConfigurationError, ValueOutOfDomain
from src.core.logging import get_logger
from src.sketches.hashing import F0_HASH_KEY, PolynomialHash, derive_rng

logger = get_logger(__name__)


class F0Sketch:
    """Bucket-sampling F0 sketch with one or more independent lanes"""

    def __init__(self, epsilon: float, delta: float, n: int, seed: int = 0, lanes: int = 1):
        """
        Initialize an empty sketch.

        Args:
            epsilon: Target relative error
            delta: Target failure probability per lane
            n: Domain size; inserts must lie in [1, n]
            seed: Master seed for the hash functions
            lanes: Number of independent sketches held side by side
        """
        if not (0.0 < epsilon < 1.0 and 0.0 < delta < 1.0):
            raise ConfigurationError(f"F0 sketch needs epsilon, delta in (0, 1), got {epsilon}, {delta}")
        if lanes < 1:
            raise ConfigurationError(f"F0 sketch needs at least one lane, got {lanes}")

        self.epsilon = epsilon
        self.delta = delta
        self.n = n
        self.lanes = lanes
        self.capacity = math.ceil(settings.f0_capacity_constant / epsilon**2)

        repetitions = max(settings.f0_min_repetitions, math.ceil(math.log(1.0 / delta)))
        self.repetitions = repetitions if repetitions % 2 else repetitions + 1

        self._hash = PolynomialHash(2, (lanes, self.repetitions), derive_rng(seed, F0_HASH_KEY))
        self._present: dict[int, np.ndarray] = {}
        self._item_levels: dict[int, np.ndarray] = {}

        self.level = np.zeros((lanes, self.repetitions), dtype=np.int16)
        self.distinct = np.zeros(lanes, dtype=np.int64)  # per lane, while exact
        self.kept: np.ndarray | None = None  # per (lane, repetition), once sampling
        self.floor = np.zeros(lanes, dtype=np.float64)
        self.sampling = False
        self.inserts = 0
        self.stored_entries = 0  # (coordinate, lane) memberships held
        self.peak_entries = 0

        logger.debug(
            f"F0Sketch initialized (eps={epsilon}, delta={delta}, lanes={lanes}, "
            f"capacity={self.capacity}, repetitions={self.repetitions})"
        )

    def insert(self, j: int, lanes: np.ndarray | None = None) -> F0Sketch:
        """
        Insert coordinate j into every lane, or into the lanes selected by a boolean mask.

        Raises:
            ValueOutOfDomain: If j is outside [1, n]
        """
        if not 1 <= j <= self.n:
            raise ValueOutOfDomain(f"coordinate {j} outside [1, {self.n}]")

        self.inserts += 1
        new = np.ones(self.lanes, dtype=bool) if lanes is None else np.array(lanes, dtype=bool)
        present = self._present.get(j)
        if present is not None:
            new &= ~present

        levels = None
        if self.sampling and new.any():
            levels = self._item_levels.get(j)
            if levels is None:
                levels = self._hash.trailing_zeros(j)
            reached = levels >= self.level
            # Levels only rise, so a coordinate no repetition keeps now is never kept later
            new &= reached.any(axis=1)

        if not new.any():
            return self

        if present is None:
            self._present[j] = new
        else:
            present |= new
        self.stored_entries += int(new.sum())

        if self.sampling:
            self._item_levels[j] = levels
            self.kept += new[:, None] & reached
            if (self.kept > self.capacity).any():
                self._raise_levels()
        else:
            self.distinct += new
            if self.distinct.max() > self.capacity:
                self._raise_levels()

        self.peak_entries = max(self.peak_entries, self.stored_entries)
        return self

    def estimates(self) -> np.ndarray:
        """Per-lane estimate: median over repetitions of kept * 2**level, floored"""
        return np.maximum(self.floor, self._scaled_medians())

    def _scaled_medians(self) -> np.ndarray:
        if not self.sampling:
            return self.distinct.astype(np.float64)
        scaled = self.kept * np.exp2(self.level.astype(np.float64))
        return np.median(scaled, axis=1)

    def estimate(self) -> float:
        """Estimate of the distinct count, averaged over lanes"""
        return float(np.mean(self.estimates()))

    def _levels_of(self, j: int) -> np.ndarray:
        levels = self._item_levels.get(j)
        if levels is None:
            levels = self._hash.trailing_zeros(j)
            self._item_levels[j] = levels
        return levels

    def _raise_levels(self) -> None:
        # Between raises kept only grows; a raise is the one step that can lower kept * 2**level
        self.floor = np.maximum(self.floor, self._scaled_medians())

        if not self.sampling:
            self.sampling = True
            self.kept = np.repeat(self.distinct[:, None], self.repetitions, axis=1)
            for j in self._present:
                self._levels_of(j)
            logger.debug(f"F0Sketch switched to sampling after {len(self._present)} coordinates")

        keys = list(self._present)
        present = np.stack([self._present[j] for j in keys])[:, :, None]
        levels = np.stack([self._item_levels[j] for j in keys])

        over = self.kept > self.capacity
        while over.any():
            self.level[over] += 1
            self.kept = (present & (levels >= self.level)).sum(axis=0)
            over = self.kept > self.capacity

        # Drop memberships in lanes where no repetition keeps the coordinate
        lane_kept = (present & (levels >= self.level)).any(axis=2)
        for j, keep in zip(keys, lane_kept, strict=True):
            self.stored_entries -= int(self._present[j].sum()) - int(keep.sum())
            if keep.any():
                self._present[j] = keep.copy()
            else:
                del self._present[j]
                del self._item_levels[j]


def f0_insert(sk: F0Sketch, j: int) -> F0Sketch:
    """Insert j into every lane of the sketch"""
    return sk.insert(j)


def f0_estimate(sk: F0Sketch) -> float:
    """Current distinct-count estimate"""
    return sk.estimate()
