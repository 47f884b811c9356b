"""
Greenwald-Khanna quantile summary.

Stores (value, g, delta) triples sorted by value. For triple i,
r_min(i) = g_1 + ... + g_i bounds the rank of v_i from below and
r_max(i) = r_min(i) + delta_i from above. Every triple keeps
g + delta <= floor(2 * eps * N) + 1, which lets a rank query land within
eps * N of its target.
"""

from __future__ import annotations

import math
from bisect import bisect_right

from src.core.exceptions import ConfigurationError, EmptySummary, ValueOutOfDomain
from src.core.logging import get_logger

logger = get_logger(__name__)


class GKSummary:
    """Deterministic epsilon-approximate rank summary over integer values"""

    def __init__(self, epsilon: float, n: int | None = None):
        """
        Initialize an empty summary.

        Args:
            epsilon: Rank error as a fraction of the number of inserts
            n: Optional domain size; when given, inserts must lie in [1, n]
        """
        if not 0.0 < epsilon < 1.0:
            raise ConfigurationError(f"GK summary needs epsilon in (0, 1), got {epsilon}")

        self.epsilon = epsilon
        self.n = n
        self.count_inserted = 0
        self.peak_size = 0

        self._values: list[int] = []
        self._g: list[int] = []
        self._delta: list[int] = []

        self._compress_every = max(1, math.floor(1.0 / (2.0 * epsilon)))
        self._since_compress = 0

    def __len__(self) -> int:
        return len(self._values)

    @property
    def tuples(self) -> list[tuple[int, int, int]]:
        """Stored (value, g, delta) triples in value order"""
        return list(zip(self._values, self._g, self._delta, strict=True))

    @property
    def band_limit(self) -> int:
        """Largest g + delta any stored triple may carry"""
        return math.floor(2.0 * self.epsilon * self.count_inserted) + 1

    def insert(self, v: int) -> GKSummary:
        """Insert one observation of v"""
        return self.insert_many(v, 1)

    def insert_many(self, v: int, w: int) -> GKSummary:
        """
        Insert w observations of v, equivalent to w calls to ``insert``.

        Copies go in as one triple with g equal to the chunk size whenever the
        band limit allows, and in successively larger chunks otherwise.

        Raises:
            ValueOutOfDomain: If v is outside [1, n]
        """
        if v < 1 or (self.n is not None and v > self.n):
            raise ValueOutOfDomain(f"value {v} outside [1, {self.n}]")
        if w < 0:
            raise ConfigurationError(f"insert count must be non-negative, got {w}")

        remaining = int(w)
        while remaining:
            idx = bisect_right(self._values, v)
            if idx == 0 or idx == len(self._values):
                delta = 0
            else:
                delta = self._g[idx] + self._delta[idx] - 1

            room = math.floor(2.0 * self.epsilon * self.count_inserted) + 1 - delta
            chunk = min(remaining, max(1, room))

            self._values.insert(idx, v)
            self._g.insert(idx, chunk)
            self._delta.insert(idx, delta)
            self.count_inserted += chunk
            remaining -= chunk

            self._since_compress += 1
            if self._since_compress >= self._compress_every:
                self.compress()
            self.peak_size = max(self.peak_size, len(self._values))

        return self

    def compress(self) -> None:
        """Merge neighbouring triples whose combined band fits under floor(2 * eps * N)"""
        self._since_compress = 0
        size = len(self._values)
        if size < 3:
            return

        threshold = math.floor(2.0 * self.epsilon * self.count_inserted)
        values, gs, deltas = [self._values[0]], [self._g[0]], [self._delta[0]]

        # The first and last triples are the exact minimum and maximum and are never merged away
        pend_v, pend_g, pend_d = self._values[1], self._g[1], self._delta[1]
        for i in range(2, size):
            g, d = self._g[i], self._delta[i]
            if pend_g + g + d <= threshold:
                g += pend_g
            else:
                values.append(pend_v)
                gs.append(pend_g)
                deltas.append(pend_d)
            pend_v, pend_g, pend_d = self._values[i], g, d
        values.append(pend_v)
        gs.append(pend_g)
        deltas.append(pend_d)

        self._values, self._g, self._delta = values, gs, deltas

    def query(self, r: int) -> int:
        """
        Return a stored value whose rank is within eps * N of r.

        Picks the triple minimizing max(r - r_min, r_max - r); ties go to the
        smaller value.

        Raises:
            EmptySummary: If nothing has been inserted
        """
        if self.count_inserted == 0:
            raise EmptySummary("rank query on an empty summary")
        if not 1 <= r <= self.count_inserted:
            raise ConfigurationError(f"rank {r} outside [1, {self.count_inserted}]")

        best_value = self._values[0]
        best_error = math.inf
        r_min = 0
        for value, g, delta in zip(self._values, self._g, self._delta, strict=True):
            r_min += g
            error = max(r - r_min, r_min + delta - r)
            if error < best_error:
                best_value, best_error = value, error
            if r_min - r > best_error:
                break
        return best_value

    def quantile(self, phi: float) -> int:
        """Value at rank ceil(phi * N), phi in (0, 1]"""
        if not 0.0 < phi <= 1.0:
            raise ConfigurationError(f"quantile fraction must be in (0, 1], got {phi}")
        return self.query(max(1, math.ceil(phi * self.count_inserted)))


def gk_insert(gs: GKSummary, v: int) -> GKSummary:
    """Insert one observation of v"""
    return gs.insert(v)


def gk_insert_many(gs: GKSummary, v: int, w: int) -> GKSummary:
    """Insert w observations of v"""
    return gs.insert_many(v, w)


def gk_query(gs: GKSummary, r: int) -> int:
    """Value whose rank is within eps * N of r"""
    return gs.query(r)
