"""
Ground-Truth Oracle

Enumerates every deterministic stream a small probabilistic stream induces
and accumulates exact expectations of all aggregates. Outcomes are visited
as a mixed-radix counter over per-item outcome indices, with the empty
outcome last and the last item varying fastest.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right

from pydantic import Field

from src.core.config import settings
from src.core.exceptions import EnumerationTooLarge
from src.core.logging import get_logger
from src.model.schemas import BaseSchema, ProbItem, ProbStream
from src.model.validation import p_bot

logger = get_logger(__name__)


class CompensatedSum:
    """Neumaier running sum"""

    __slots__ = ("total", "_compensation")

    def __init__(self):
        self.total = 0.0
        self._compensation = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self._compensation += (self.total - t) + x
        else:
            self._compensation += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self._compensation


class OracleResult(BaseSchema):
    """Exact expectations over the induced distribution"""

    avg: float | None = Field(description="E[(Y/Z) 1[Z >= 1]], None when Pr[Z >= 1] = 0")
    distinct: float
    repeat_rate: float
    count: float
    sum: float
    pr_nonempty: float
    pr_c_w: float | None = None
    w: float | None = None
    total_probability: float
    outcomes: int
    below_above: dict[int, tuple[float, float]] = Field(default_factory=dict)


def outcome_space_size(stream: ProbStream) -> int:
    """Product over items of (tuples + 1)"""
    return math.prod(len(item) + 1 for item in stream.items)


def _outcomes(item: ProbItem) -> list[tuple[int | None, float]]:
    outcomes: list[tuple[int | None, float]] = [(t.value, t.prob) for t in item.tuples]
    bot = p_bot(item)
    if bot > 0.0:
        outcomes.append((None, bot))
    return outcomes


def enumerate_stream(stream: ProbStream, w: float | None = None, budget: int | None = None) -> OracleResult:
    """
    Exact aggregates by exhaustive enumeration.

    Args:
        stream: Stream to enumerate
        w: Optional band half-width; when given, pr_c_w is the probability that
            every prefix count Z_i stays within w of E[Z_i]
        budget: Largest outcome space accepted (default settings.enumeration_budget)

    Raises:
        EnumerationTooLarge: If the outcome space exceeds the budget
    """
    budget = settings.enumeration_budget if budget is None else budget
    size = outcome_space_size(stream)
    if size > budget:
        raise EnumerationTooLarge(f"{size} induced streams exceed the enumeration budget of {budget}")

    items = stream.items
    expected_prefix = list(itertools.accumulate((1.0 - p_bot(item) for item in items), initial=0.0))[1:]
    candidates = sorted({t.value for item in items for t in item.tuples})

    total, ratio, nonempty = CompensatedSum(), CompensatedSum(), CompensatedSum()
    distinct, repeat, count, value_sum = CompensatedSum(), CompensatedSum(), CompensatedSum(), CompensatedSum()
    band = CompensatedSum()
    below = [CompensatedSum() for _ in candidates]
    above = [CompensatedSum() for _ in candidates]

    visited = 0
    for combo in itertools.product(*(_outcomes(item) for item in items)):
        visited += 1
        prob = 1.0
        z = 0
        y = 0
        frequencies: dict[int, int] = {}
        in_band = True
        for i, (value, p) in enumerate(combo):
            prob *= p
            if value is not None:
                z += 1
                y += value
                frequencies[value] = frequencies.get(value, 0) + 1
            if w is not None and in_band and abs(z - expected_prefix[i]) > w:
                in_band = False

        total.add(prob)
        count.add(prob * z)
        value_sum.add(prob * y)
        distinct.add(prob * len(frequencies))
        repeat.add(prob * math.fsum(c * c for c in frequencies.values()))
        if z:
            nonempty.add(prob)
            ratio.add(prob * y / z)
        if in_band:
            band.add(prob)

        realized = sorted(v for v, c in frequencies.items() for _ in range(c))
        for k, x in enumerate(candidates):
            below[k].add(prob * bisect_left(realized, x))
            above[k].add(prob * (z - bisect_right(realized, x)))

    logger.debug(f"Oracle enumerated {visited} induced streams (space {size})")

    return OracleResult(
        avg=ratio.value if nonempty.value > 0.0 else None,
        distinct=distinct.value,
        repeat_rate=repeat.value,
        count=count.value,
        sum=value_sum.value,
        pr_nonempty=nonempty.value,
        pr_c_w=band.value if w is not None else None,
        w=w,
        total_probability=total.value,
        outcomes=visited,
        below_above={x: (below[k].value, above[k].value) for k, x in enumerate(candidates)},
    )
