"""
ProbStream Domain Schemas

Immutable Pydantic models for probabilistic streams.
"""

from __future__ import annotations

from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import ValueOutOfDomain


class BaseSchema(BaseModel):
    """Base schema with common configuration"""

    model_config = ConfigDict(frozen=True)


class ProbTuple(BaseSchema):
    """One (value, probability) outcome of an item"""

    value: int = Field(ge=1)
    prob: float = Field(gt=0.0)


class ProbItem(BaseSchema):
    """
    One stream element: a distribution over at most l values.

    The mass not covered by the tuples belongs to the empty outcome (bottom).
    Build checked instances with ``validate_item``.
    """

    tuples: tuple[ProbTuple, ...] = ()

    @property
    def mass(self) -> float:
        """Total probability of the non-bottom outcomes"""
        return sum(t.prob for t in self.tuples)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(t.value for t in self.tuples)

    def __len__(self) -> int:
        return len(self.tuples)


class ProbStream(BaseSchema):
    """A finite probabilistic stream over the domain [1, n]"""

    items: tuple[ProbItem, ...] = ()
    n: int = Field(ge=1)

    @property
    def m(self) -> int:
        """Number of items"""
        return len(self.items)

    @property
    def l_max(self) -> int:
        """Largest tuple count of any item"""
        return max((len(item) for item in self.items), default=0)

    def __len__(self) -> int:
        return len(self.items)

    @classmethod
    def from_items(cls, items: Iterable[ProbItem], n: int | None = None) -> ProbStream:
        """
        Build a stream, inferring n as the largest value seen when not supplied.

        Raises:
            ValueOutOfDomain: If a value exceeds the supplied n
        """
        items = tuple(items)
        largest = max((t.value for item in items for t in item.tuples), default=1)
        if n is None:
            n = largest
        elif largest > n:
            raise ValueOutOfDomain(f"value {largest} exceeds domain size n={n}")
        return cls(items=items, n=n)


class ApproxParams(BaseSchema):
    """Accuracy, confidence and seed for randomized estimators"""

    epsilon: float = Field(gt=0.0, lt=1.0)
    delta: float = Field(gt=0.0, lt=1.0)
    seed: int = Field(default=0, ge=0, lt=2**64)
