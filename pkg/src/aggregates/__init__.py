"""
Aggregates Package

Single-pass estimators of the six aggregates over a probabilistic stream,
each available as a streaming estimator object and as a function over a
materialized ``ProbStream``.
"""

from src.aggregates.average import AverageEstimator, AvgConfig, AvgDpState, avg, avg_dp
from src.aggregates.base import StreamEstimator
from src.aggregates.distinct import DistinctConfig, DistinctEstimator, distinct_estimate
from src.aggregates.exact import (
    CountEstimator,
    DistinctExactEstimator,
    RepeatRateExactEstimator,
    SumEstimator,
    count,
    distinct_exact,
    repeat_rate_exact,
    sum,
)
from src.aggregates.quantiles import (
    QuantileEstimator,
    check_approx_median,
    check_approx_quantile,
    copy_multiplier,
    expected_below_above,
    median,
    quantile,
)
from src.aggregates.repeat_rate import RepeatRateEstimator, repeat_rate

__all__ = [
    "AverageEstimator",
    "AvgConfig",
    "AvgDpState",
    "CountEstimator",
    "DistinctConfig",
    "DistinctEstimator",
    "DistinctExactEstimator",
    "QuantileEstimator",
    "RepeatRateEstimator",
    "RepeatRateExactEstimator",
    "StreamEstimator",
    "SumEstimator",
    "avg",
    "avg_dp",
    "check_approx_median",
    "check_approx_quantile",
    "copy_multiplier",
    "count",
    "distinct_estimate",
    "distinct_exact",
    "expected_below_above",
    "median",
    "quantile",
    "repeat_rate",
    "repeat_rate_exact",
    "sum",
]
