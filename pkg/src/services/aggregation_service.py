"""
ProbStream Aggregation Service

Runs any selection of aggregates over one pass of an item iterator and
assembles the RunReport.
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Sequence

from src.aggregates import (
    AverageEstimator,
    CountEstimator,
    DistinctEstimator,
    DistinctExactEstimator,
    QuantileEstimator,
    RepeatRateEstimator,
    RepeatRateExactEstimator,
    StreamEstimator,
    SumEstimator,
)
from src.aggregates.average import Precision
from src.core.config import settings
from src.core.exceptions import ConfigurationError
from src.core.logging import get_logger
from src.etl.reader import StreamReader
from src.model.report import RunReport
from src.model.schemas import ApproxParams, ProbItem, ProbStream
from src.oracle import enumerate_stream

logger = get_logger(__name__)

STATS = ("count", "sum", "avg", "distinct", "repeat_rate", "median", "quantile")
ALL_STATS = ("count", "sum", "avg", "distinct", "repeat_rate", "median")

# Report key holding each estimator's variant tag
VARIANT_KEYS = {
    "avg": "avg_regime",
    "distinct": "distinct_variant",
    "repeat_rate": "repeat_rate_variant",
}


def expand_stats(stats: Sequence[str]) -> list[str]:
    """Resolve "all" and CLI spellings into an ordered, de-duplicated list"""
    resolved: list[str] = []
    for stat in stats:
        stat = stat.replace("-", "_")
        names = ALL_STATS if stat == "all" else (stat,)
        for name in names:
            if name not in STATS:
                raise ConfigurationError(f"unknown aggregate {stat!r}")
            if name not in resolved:
                resolved.append(name)
    return resolved


class AggregationService:
    """Single-pass evaluation of several aggregates"""

    def __init__(
        self,
        epsilon: float | None = None,
        delta: float | None = None,
        seed: int | None = None,
        n: int | None = None,
        m: int | None = None,
        tuples: int | None = None,
        exact: bool = False,
        precision: Precision = "double",
        phi: float = 0.5,
        timings: bool = False,
    ):
        """
        Initialize aggregation service.

        Args:
            epsilon: Accuracy (default settings.default_epsilon)
            delta: Failure probability (default settings.default_delta)
            seed: Master seed (default settings.default_seed)
            n: Domain size, needed by the DISTINCT and REPEAT-RATE sketches
            m: Item count or an upper bound on it, needed by AVG and MEDIAN
            tuples: Total tuple count or an upper bound, sizes MEDIAN's copies
            exact: Use the exact O(n)-memory DISTINCT and REPEAT-RATE
            precision: AVG dynamic-program arithmetic, "double" or "exact"
            phi: Quantile fraction for the "quantile" aggregate
            timings: Record wall time of the pass in the report
        """
        self.params = ApproxParams(
            epsilon=settings.default_epsilon if epsilon is None else epsilon,
            delta=settings.default_delta if delta is None else delta,
            seed=settings.default_seed if seed is None else seed,
        )
        self.n = n
        self.m = m
        self.tuples = tuples
        self.exact = exact
        self.precision = precision
        self.phi = phi
        self.timings = timings

    @property
    def copy_multiplier(self) -> int:
        return max(1, self.m or 0, self.tuples or 0)

    def build_estimators(self, stats: Sequence[str]) -> dict[str, StreamEstimator]:
        """
        Instantiate one estimator per aggregate.

        Raises:
            DomainUnknown: If a sketch needs n and none was given
            ConfigurationError: If AVG or MEDIAN lacks an item count
        """
        estimators: dict[str, StreamEstimator] = {}
        eps = self.params.epsilon

        for stat in expand_stats(stats):
            if stat == "count":
                estimators[stat] = CountEstimator()
            elif stat == "sum":
                estimators[stat] = SumEstimator()
            elif stat == "avg":
                if self.m is None:
                    raise ConfigurationError("AVG needs the item count m (or an upper bound) before the pass")
                estimators[stat] = AverageEstimator(eps, self.m, self.n, self.precision)
            elif stat == "distinct":
                estimators[stat] = (
                    DistinctExactEstimator() if self.exact else DistinctEstimator(self.params, self.n)
                )
            elif stat == "repeat_rate":
                estimators[stat] = (
                    RepeatRateExactEstimator() if self.exact else RepeatRateEstimator(self.params, self.n)
                )
            elif stat in ("median", "quantile"):
                if self.m is None and self.tuples is None:
                    raise ConfigurationError(f"{stat} needs an item-count hint before the pass")
                phi = 0.5 if stat == "median" else self.phi
                estimators[stat] = QuantileEstimator(eps, self.copy_multiplier, phi=phi, n=self.n)

        return estimators

    def run(self, items: Iterable[ProbItem], stats: Sequence[str]) -> RunReport:
        """
        Feed every item once to every selected estimator.

        Returns:
            RunReport with results, variant tags, parameters and state sizes
        """
        estimators = self.build_estimators(stats)
        logger.info(f"Aggregating {', '.join(estimators)} (eps={self.params.epsilon}, seed={self.params.seed})")

        started = time.perf_counter()
        m = 0
        for item in items:
            m += 1
            for estimator in estimators.values():
                estimator.update(item)
        passed = time.perf_counter()

        fields: dict = {}
        state_sizes: dict[str, int] = {}
        for stat, estimator in estimators.items():
            fields[stat] = estimator.result()
            if stat in VARIANT_KEYS:
                fields[VARIANT_KEYS[stat]] = estimator.variant
            state_sizes.update(estimator.state_sizes)
        finished = time.perf_counter()

        params = {
            "epsilon": self.params.epsilon,
            "delta": self.params.delta,
            "seed": self.params.seed,
            "n": self.n,
            "m": m,
        }
        if "quantile" in estimators:
            params["phi"] = self.phi
        if "avg" in estimators and self.precision != "double":
            params["precision"] = self.precision
        if self.exact:
            params["exact"] = True

        timings = None
        if self.timings:
            timings = {"pass_seconds": passed - started, "finalize_seconds": finished - passed}

        return RunReport(command="agg", params=params, state_sizes=state_sizes, timings=timings, **fields)

    def run_stream(self, stream: ProbStream, stats: Sequence[str]) -> RunReport:
        """Run over a materialized stream; n and m default to the stream's"""
        if self.n is None:
            self.n = stream.n
        if self.m is None:
            self.m = stream.m
        if self.tuples is None:
            self.tuples = sum(len(item) for item in stream.items)
        return self.run(stream.items, stats)

    def run_reader(self, reader: StreamReader, stats: Sequence[str]) -> RunReport:
        """Run over a reader; a file header supplies n when no n was given"""
        header_n = reader.read_header()
        if self.n is None:
            self.n = header_n
        return self.run(reader.items(), stats)


def oracle_report(stream: ProbStream, w: float | None = None) -> RunReport:
    """
    Exact aggregates of a small stream as a RunReport.

    Raises:
        EnumerationTooLarge: If the outcome space exceeds the budget
    """
    result = enumerate_stream(stream, w=w)
    params: dict = {"n": stream.n, "m": stream.m}
    if w is not None:
        params["w"] = w
    return RunReport(
        command="oracle",
        count=result.count,
        sum=result.sum,
        avg=result.avg,
        avg_regime="oracle" if result.avg is not None else None,
        distinct=result.distinct,
        distinct_variant="oracle",
        repeat_rate=result.repeat_rate,
        repeat_rate_variant="oracle",
        pr_c_w=result.pr_c_w,
        pr_nonempty=result.pr_nonempty,
        outcomes=result.outcomes,
        params=params,
    )
