"""
DISTINCT Estimator

When COUNT <= ln(1 + eps), COUNT itself is within eps of DISTINCT and is
returned. Otherwise c1 basic estimators run side by side: each one flips an
independent coin per tuple (j, p), keeps j with probability p, and feeds the
kept coordinates to its own F0 sketch. The answer is the mean of the c1
F0 estimates.

The basic estimators are the lanes of one ``F0Sketch``; the coins of a tuple
are one vector draw, in (item, tuple) order, from a generator seeded by the
master seed.
"""

from __future__ import annotations

import math

from pydantic import computed_field

from src.aggregates.base import StreamEstimator
from src.aggregates.exact import CountEstimator
from src.core.exceptions import DomainUnknown
from src.core.logging import get_logger
from src.model.schemas import ApproxParams, BaseSchema, ProbItem, ProbStream
from src.sketches.f0 import F0Sketch
from src.sketches.hashing import DISTINCT_COIN_KEY, derive_rng

logger = get_logger(__name__)


class DistinctConfig(BaseSchema):
    """Number of basic estimators and the parameters each one runs with"""

    params: ApproxParams

    @computed_field
    @property
    def c1(self) -> int:
        eps, delta = self.params.epsilon, self.params.delta
        return max(1, math.ceil(54.0 / eps**3 * math.log(4.0 / delta)))

    @computed_field
    @property
    def estimator_epsilon(self) -> float:
        return self.params.epsilon / 3.0

    @computed_field
    @property
    def estimator_delta(self) -> float:
        return self.params.delta / (2.0 * self.c1)


class DistinctEstimator(StreamEstimator):
    """(eps, delta)-approximate DISTINCT in one pass"""

    name = "distinct"

    def __init__(self, params: ApproxParams, n: int | None):
        if n is None:
            raise DomainUnknown("DISTINCT needs the domain size n to size its sketches")

        self.config = DistinctConfig(params=params)
        self.count = CountEstimator()
        self._coins = derive_rng(params.seed, DISTINCT_COIN_KEY)
        self.sketch = F0Sketch(
            self.config.estimator_epsilon,
            self.config.estimator_delta,
            n,
            seed=params.seed,
            lanes=self.config.c1,
        )
        self._variant: str | None = None
        logger.debug(f"DISTINCT runs {self.config.c1} basic estimators")

    def update(self, item: ProbItem) -> None:
        self.count.update(item)
        for t in item.tuples:
            lanes = self._coins.random(self.config.c1) < t.prob
            if lanes.any():
                self.sketch.insert(t.value, lanes)

    def result(self) -> float:
        count = self.count.result()
        if count <= math.log1p(self.config.params.epsilon):
            self._variant = "shortcut"
            logger.info(f"DISTINCT answered by COUNT={count:.6g} (small-count shortcut)")
            return count

        self._variant = "sketch"
        return self.sketch.estimate()

    @property
    def variant(self) -> str | None:
        return self._variant

    @property
    def state_sizes(self) -> dict[str, int]:
        return {
            "distinct_estimators": self.config.c1,
            "f0_peak_entries": self.sketch.peak_entries,
        }


def distinct_estimate(stream: ProbStream, params: ApproxParams) -> float:
    """
    (eps, delta)-approximation of the expected number of distinct values.

    Raises:
        DomainUnknown: If the stream carries no domain size
    """
    return DistinctEstimator(params, stream.n).consume(stream.items).result()
