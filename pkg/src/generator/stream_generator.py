"""
Synthetic Probabilistic Stream Generator

Each item draws l distinct values by the skew law and splits its mass with a
symmetric Dirichlet(1) over l + 1 cells. The last cell is the empty outcome,
rescaled so that its average lands near ``bot_mass``:

    p_bot = min(1, d_last * (l + 1) * bot_mass)
    p_k   = (1 - p_bot) * d_k / sum_{k < l} d_k

Items whose p_bot reaches 1 are emitted as empty (all-bottom) items.
"""

from __future__ import annotations

import bisect
import itertools
from collections.abc import Iterator
from typing import Literal

from pydantic import Field

from src.core.exceptions import InfeasibleSpec
from src.core.logging import get_logger
from src.generator.prng import XorShift64Star
from src.model.schemas import BaseSchema, ProbItem, ProbStream
from src.model.validation import validate_item

logger = get_logger(__name__)


class GenSpec(BaseSchema):
    """Shape of a synthetic stream"""

    m: int = Field(ge=1, description="Number of items")
    n: int = Field(ge=1, description="Domain size")
    l: int = Field(ge=1, description="Tuples per item")
    bot_mass: float = Field(default=0.0, ge=0.0, lt=1.0, description="Target average empty-outcome mass")
    value_skew: Literal["uniform", "zipf"] = "uniform"
    zipf_s: float = Field(default=1.0, gt=0.0, description="Zipf exponent")
    seed: int = Field(default=0, ge=0, lt=2**64)


class _ZipfSampler:
    """Inverse-CDF sampler over [1, n] with weight k**-s"""

    def __init__(self, n: int, s: float):
        self.cumulative = list(itertools.accumulate(k**-s for k in range(1, n + 1)))

    def __call__(self, rng: XorShift64Star) -> int:
        u = rng.random() * self.cumulative[-1]
        return min(bisect.bisect_right(self.cumulative, u), len(self.cumulative) - 1) + 1


def generate_items(spec: GenSpec) -> Iterator[ProbItem]:
    """
    Lazily yield the items of ``generate(spec)``.

    Raises:
        InfeasibleSpec: If l exceeds the domain size
    """
    if spec.l > spec.n:
        raise InfeasibleSpec(f"cannot draw l={spec.l} distinct values from a domain of n={spec.n}")
    return _items(spec)


def _items(spec: GenSpec) -> Iterator[ProbItem]:
    rng = XorShift64Star(spec.seed)
    if spec.value_skew == "zipf":
        sampler = _ZipfSampler(spec.n, spec.zipf_s)

        def draw_value() -> int:
            return sampler(rng)
    else:

        def draw_value() -> int:
            return rng.below(spec.n) + 1

    for _ in range(spec.m):
        values: list[int] = []
        while len(values) < spec.l:
            value = draw_value()
            if value not in values:
                values.append(value)

        cells = [rng.exponential() for _ in range(spec.l + 1)]
        total = sum(cells)
        shares = [c / total for c in cells]
        bot = min(1.0, shares[-1] * (spec.l + 1) * spec.bot_mass)
        if bot >= 1.0:
            yield ProbItem()
            continue

        tuple_share = sum(shares[:-1])
        yield validate_item((v, (1.0 - bot) * d / tuple_share) for v, d in zip(values, shares, strict=False))


def generate(spec: GenSpec) -> ProbStream:
    """
    Materialize a synthetic stream; fully determined by ``spec``.

    Raises:
        InfeasibleSpec: If l exceeds the domain size
    """
    stream = ProbStream(items=tuple(generate_items(spec)), n=spec.n)
    logger.debug(f"Generated stream m={stream.m}, n={spec.n}, l={spec.l}, seed={spec.seed}")
    return stream
