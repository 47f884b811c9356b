"""
Sketches Package

Deterministic-stream summaries used as building blocks by the aggregates.

Modules:
- hashing: k-wise independent polynomial hashing over GF(2^61 - 1)
- f0: bucket-sampling distinct counter
- f2: tug-of-war second frequency moment sketch
- gk: Greenwald-Khanna quantile summary
"""

from src.sketches.f0 import F0Sketch, f0_estimate, f0_insert
from src.sketches.f2 import F2Sketch, f2_estimate, f2_update
from src.sketches.gk import GKSummary, gk_insert, gk_insert_many, gk_query

__all__ = [
    "F0Sketch",
    "F2Sketch",
    "GKSummary",
    "f0_estimate",
    "f0_insert",
    "f2_estimate",
    "f2_update",
    "gk_insert",
    "gk_insert_many",
    "gk_query",
]
