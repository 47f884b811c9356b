"""
Services Package

Single-pass aggregation runs and benchmark sweeps.
"""

from src.services.aggregation_service import AggregationService, expand_stats, oracle_report
from src.services.benchmark_service import BenchmarkService, SweepSpec, relative_error

__all__ = [
    "AggregationService",
    "BenchmarkService",
    "SweepSpec",
    "expand_stats",
    "oracle_report",
    "relative_error",
]
