"""
MEDIAN and Quantile Estimators

Each tuple (j, p) puts floor(2 M p / eps) copies of j into an induced
deterministic stream, held in a GK summary with parameter eps / 4. M is the
copy multiplier: at least the item count m and at least the total number of
tuples, so that the floor loss stays below eps / 2 of one element. The
answer is the value at rank ceil(phi * N) of the N copies.
"""

from __future__ import annotations

import math

from src.aggregates.base import StreamEstimator
from src.core.exceptions import ConfigurationError, EmptyInducedStream
from src.core.logging import get_logger
from src.model.schemas import ProbItem, ProbStream
from src.model.validation import p_bot
from src.sketches.gk import GKSummary

logger = get_logger(__name__)

# Slack for ceil(COUNT) when COUNT is a float sum that should be an integer
CEIL_TOLERANCE = 1e-9


def copy_multiplier(stream: ProbStream) -> int:
    """max(m, total tuples) for a materialized stream"""
    tuples = sum(len(item) for item in stream.items)
    return max(1, stream.m, tuples)


class QuantileEstimator(StreamEstimator):
    """Approximate phi-quantile (the median for phi = 0.5)"""

    name = "median"

    def __init__(self, epsilon: float, multiplier: int, phi: float = 0.5, n: int | None = None):
        """
        Args:
            epsilon: Target rank accuracy
            multiplier: Copy multiplier M, an upper bound on both the item
                count and the total tuple count
            phi: Quantile fraction in (0, 1]
            n: Optional domain size, checked on insert
        """
        if not 0.0 < phi <= 1.0:
            raise ConfigurationError(f"quantile fraction must be in (0, 1], got {phi}")
        if multiplier < 1:
            raise ConfigurationError(f"copy multiplier must be at least 1, got {multiplier}")

        self.epsilon = epsilon
        self.multiplier = multiplier
        self.phi = phi
        self.summary = GKSummary(epsilon / 4.0, n)
        if phi != 0.5:
            self.name = "quantile"

    def update(self, item: ProbItem) -> None:
        for t in item.tuples:
            copies = math.floor(2.0 * self.multiplier * t.prob / self.epsilon)
            if copies:
                self.summary.insert_many(t.value, copies)

    def result(self) -> int:
        if self.summary.count_inserted == 0:
            raise EmptyInducedStream(
                f"no tuple reaches one copy at eps={self.epsilon}; probabilities are below eps / (2M)"
            )
        return self.summary.quantile(self.phi)

    @property
    def state_sizes(self) -> dict[str, int]:
        return {
            "gk_peak_triples": self.summary.peak_size,
            "induced_stream_length": self.summary.count_inserted,
        }


def quantile(stream: ProbStream, phi: float, epsilon: float, multiplier: int | None = None) -> int:
    """
    Approximate phi-quantile of a probabilistic stream.

    Raises:
        EmptyInducedStream: If every tuple rounds down to zero copies
    """
    multiplier = multiplier or copy_multiplier(stream)
    estimator = QuantileEstimator(epsilon, multiplier, phi=phi, n=stream.n)
    return estimator.consume(stream.items).result()


def median(stream: ProbStream, epsilon: float, multiplier: int | None = None) -> int:
    """Approximate median; same as ``quantile(stream, 0.5, epsilon)``"""
    return quantile(stream, 0.5, epsilon, multiplier)


def expected_below_above(stream: ProbStream, x: int) -> tuple[float, float]:
    """Expected numbers of realized elements strictly below and strictly above x"""
    below: list[float] = []
    above: list[float] = []
    for item in stream.items:
        for t in item.tuples:
            if t.value < x:
                below.append(t.prob)
            elif t.value > x:
                above.append(t.prob)
    return math.fsum(below), math.fsum(above)


def check_approx_quantile(stream: ProbStream, x: int, phi: float, epsilon: float) -> bool:
    """
    True when x is an eps-approximate phi-quantile:
    E[#below x] <= (phi + eps) ceil(COUNT) and E[#above x] <= (1 - phi + eps) ceil(COUNT).
    """
    count = math.fsum(1.0 - p_bot(item) for item in stream.items)
    rounded = math.ceil(count - CEIL_TOLERANCE)
    below, above = expected_below_above(stream, x)
    return (
        below <= (phi + epsilon) * rounded + CEIL_TOLERANCE
        and above <= (1.0 - phi + epsilon) * rounded + CEIL_TOLERANCE
    )


def check_approx_median(stream: ProbStream, x: int, epsilon: float) -> bool:
    """True when x is an eps-approximate median"""
    return check_approx_quantile(stream, x, 0.5, epsilon)
