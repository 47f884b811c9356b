"""
REPEAT-RATE Estimator

REPEAT-RATE = sum_j f_j^2 + sum over tuples of p (1 - p), where f_j is the
total probability on j. The first term goes to an F2 sketch with fractional
weights; the second is an exact running scalar. Both terms are nonnegative,
so the sketch's relative error carries over to the total.
"""

from __future__ import annotations

from src.aggregates.base import StreamEstimator
from src.core.exceptions import DomainUnknown
from src.model.schemas import ApproxParams, ProbItem, ProbStream
from src.sketches.f2 import F2Sketch


class RepeatRateEstimator(StreamEstimator):
    """(eps, delta)-approximate REPEAT-RATE in one pass"""

    name = "repeat_rate"

    def __init__(self, params: ApproxParams, n: int | None):
        if n is None:
            raise DomainUnknown("REPEAT-RATE needs the domain size n to size its sketch")
        self.sketch = F2Sketch(params.epsilon, params.delta, n, seed=params.seed)
        self.spread = 0.0

    def update(self, item: ProbItem) -> None:
        for t in item.tuples:
            self.sketch.update(t.value, t.prob)
            self.spread += t.prob * (1.0 - t.prob)

    def result(self) -> float:
        return self.sketch.estimate() + self.spread

    @property
    def variant(self) -> str:
        return "sketch"

    @property
    def state_sizes(self) -> dict[str, int]:
        return {"f2_counters": self.sketch.size}


def repeat_rate(stream: ProbStream, params: ApproxParams) -> float:
    """
    (eps, delta)-approximation of the expected second frequency moment.

    Raises:
        DomainUnknown: If the stream carries no domain size
    """
    return RepeatRateEstimator(params, stream.n).consume(stream.items).result()
