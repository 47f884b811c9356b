"""
Run report emitted by the CLI as one JSON object.

Result keys are flat (``"avg": 1.5``); every randomized or multi-regime
result carries a variant tag next to it (``"avg_regime": "dp"``).
"""

from __future__ import annotations

from typing import Any

from pydantic import Field

from src.model.schemas import BaseSchema


class RunReport(BaseSchema):
    """Results, echoed parameters and peak state sizes of one run"""

    command: str

    count: float | None = None
    sum: float | None = None
    avg: float | None = None
    avg_regime: str | None = None
    distinct: float | None = None
    distinct_variant: str | None = None
    repeat_rate: float | None = None
    repeat_rate_variant: str | None = None
    median: int | None = None
    quantile: int | None = None

    pr_c_w: float | None = None
    pr_nonempty: float | None = None
    outcomes: int | None = None

    params: dict[str, Any] = Field(default_factory=dict)
    state_sizes: dict[str, int] = Field(default_factory=dict)
    timings: dict[str, float] | None = None

    def to_json(self) -> str:
        """Compact JSON with unset results left out"""
        return self.model_dump_json(exclude_none=True)
