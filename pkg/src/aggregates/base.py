"""
Streaming Estimator Base

Every aggregate is a single-pass estimator: feed items in stream order with
``update`` and read the answer with ``result``. Several estimators can share
one pass over the same items.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterable
from typing import Any

from src.model.schemas import ProbItem


class StreamEstimator(ABC):
    """Abstract single-pass aggregate over a probabilistic stream"""

    #: Report key of the aggregate
    name: str = ""

    @abstractmethod
    def update(self, item: ProbItem) -> None:
        """Consume the next item"""

    @abstractmethod
    def result(self) -> Any:
        """Final value after the last item"""

    @property
    def variant(self) -> str | None:
        """Algorithm variant that produced the result, if the aggregate has several"""
        return None

    @property
    def state_sizes(self) -> dict[str, int]:
        """Peak state sizes worth reporting"""
        return {}

    def consume(self, items: Iterable[ProbItem]) -> StreamEstimator:
        """Feed a whole sequence of items"""
        for item in items:
            self.update(item)
        return self
