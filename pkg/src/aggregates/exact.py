"""
Exact single-pass aggregates: COUNT, SUM, and the O(n)-memory references for
DISTINCT and REPEAT-RATE.
"""

from __future__ import annotations

import math

from src.aggregates.base import StreamEstimator
from src.model.schemas import ProbItem, ProbStream
from src.model.validation import cond_mean, p_bot


class CountEstimator(StreamEstimator):
    """COUNT = sum over items of (1 - p_bot)"""

    name = "count"

    def __init__(self):
        self.total = 0.0

    def update(self, item: ProbItem) -> None:
        self.total += 1.0 - p_bot(item)

    def result(self) -> float:
        return self.total


class SumEstimator(StreamEstimator):
    """SUM = sum over items of E[X | X != bottom] * (1 - p_bot); all-bottom items add nothing"""

    name = "sum"

    def __init__(self):
        self.total = 0.0

    def update(self, item: ProbItem) -> None:
        bot = p_bot(item)
        if bot < 1.0:
            self.total += cond_mean(item) * (1.0 - bot)

    def result(self) -> float:
        return self.total


class DistinctExactEstimator(StreamEstimator):
    """
    DISTINCT = sum over j of (1 - prod_i (1 - p_ij)).

    Keeps one running product per value seen.
    """

    name = "distinct"

    def __init__(self):
        self.miss: dict[int, float] = {}

    def update(self, item: ProbItem) -> None:
        for t in item.tuples:
            self.miss[t.value] = self.miss.get(t.value, 1.0) * (1.0 - t.prob)

    def result(self) -> float:
        return math.fsum(1.0 - prod for prod in self.miss.values())

    @property
    def variant(self) -> str:
        return "exact"

    @property
    def state_sizes(self) -> dict[str, int]:
        return {"distinct_exact_entries": len(self.miss)}


class RepeatRateExactEstimator(StreamEstimator):
    """
    REPEAT-RATE = sum_j f_j^2 + sum over tuples of p (1 - p), with f_j = sum_i p_ij.
    """

    name = "repeat_rate"

    def __init__(self):
        self.frequencies: dict[int, float] = {}
        self.spread = 0.0

    def update(self, item: ProbItem) -> None:
        for t in item.tuples:
            self.frequencies[t.value] = self.frequencies.get(t.value, 0.0) + t.prob
            self.spread += t.prob * (1.0 - t.prob)

    def result(self) -> float:
        return math.fsum(f * f for f in self.frequencies.values()) + self.spread

    @property
    def variant(self) -> str:
        return "exact"

    @property
    def state_sizes(self) -> dict[str, int]:
        return {"repeat_rate_exact_entries": len(self.frequencies)}


def count(stream: ProbStream) -> float:
    """Expected number of realized elements"""
    return CountEstimator().consume(stream.items).result()


def sum(stream: ProbStream) -> float:
    """Expected sum of realized values"""
    return SumEstimator().consume(stream.items).result()


def distinct_exact(stream: ProbStream) -> float:
    """Expected number of distinct realized values, exactly"""
    return DistinctExactEstimator().consume(stream.items).result()


def repeat_rate_exact(stream: ProbStream) -> float:
    """Expected second frequency moment of the realization, exactly"""
    return RepeatRateExactEstimator().consume(stream.items).result()
