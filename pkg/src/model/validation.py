"""
Item validation and per-item quantities.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from numbers import Integral, Real

from src.core.config import settings
from src.core.exceptions import (
    AllBotItem,
    DuplicateValue,
    NonPositiveProb,
    NonPositiveValue,
    ProbSumExceedsOne,
    StreamFormatError,
)
from src.model.schemas import ProbItem, ProbTuple


def validate_item(raw_tuples: Iterable[tuple[int, float]], tol: float | None = None) -> ProbItem:
    """
    Build a ProbItem from raw (value, prob) pairs, enforcing the stream model.

    Args:
        raw_tuples: Pairs in stream order
        tol: Slack allowed above a total mass of 1 (default settings.tol_parse)

    Returns:
        Validated ProbItem

    Raises:
        NonPositiveValue: If a value is below 1
        NonPositiveProb: If a probability is not a finite number above 0
        DuplicateValue: If a value repeats within the item
        ProbSumExceedsOne: If the probabilities sum past 1 + tol
    """
    tol = settings.tol_parse if tol is None else tol

    seen: set[int] = set()
    tuples: list[ProbTuple] = []
    total = 0.0

    for pair in raw_tuples:
        try:
            value, prob = pair
        except (TypeError, ValueError):
            raise StreamFormatError(f"expected a [value, prob] pair, got {pair!r}")

        if isinstance(value, bool) or not isinstance(value, Integral):
            raise StreamFormatError(f"value must be an integer, got {value!r}")
        if isinstance(prob, bool) or not isinstance(prob, Real):
            raise StreamFormatError(f"probability must be a number, got {prob!r}")

        value = int(value)
        prob = float(prob)
        if value < 1:
            raise NonPositiveValue(f"value {value} is below 1")
        if not math.isfinite(prob) or prob <= 0.0:
            raise NonPositiveProb(f"probability {prob!r} for value {value} must be finite and > 0")
        if value in seen:
            raise DuplicateValue(f"value {value} appears more than once in one item")

        seen.add(value)
        tuples.append(ProbTuple(value=value, prob=prob))
        total += prob

    if total > 1.0 + tol:
        raise ProbSumExceedsOne(f"probabilities sum to {total!r} > 1")

    return ProbItem(tuples=tuple(tuples))


def p_bot(item: ProbItem) -> float:
    """Probability that the item realizes no element, clamped into [0, 1]"""
    return min(1.0, max(0.0, 1.0 - item.mass))


def cond_mean(item: ProbItem) -> float:
    """
    Expected value of the item given that it realizes an element.

    Normalizes by the tuple mass, which equals 1 - p_bot except inside the
    parse tolerance band where the mass slightly exceeds 1.

    Raises:
        AllBotItem: If the item has no non-bottom mass
    """
    mass = item.mass
    if p_bot(item) >= 1.0 or mass <= 0.0:
        raise AllBotItem("conditional mean is undefined for an all-bottom item")
    return sum(t.value * t.prob for t in item.tuples) / mass
