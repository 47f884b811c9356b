"""
ProbStream Benchmark Service

Sweeps a grid of stream shapes and accuracy parameters over generated
streams, compares every estimator with its exact reference, and collects one
row per (configuration, seed) into a polars DataFrame.
"""

from __future__ import annotations

import concurrent.futures
import itertools
import math
import time
from pathlib import Path
from typing import Any, Literal

import polars as pl
import yaml
from pydantic import Field

from src.aggregates import (
    AverageEstimator,
    DistinctEstimator,
    QuantileEstimator,
    RepeatRateEstimator,
    avg_dp,
    check_approx_median,
    copy_multiplier,
    distinct_exact,
    repeat_rate_exact,
)
from src.core.config import settings
from src.core.exceptions import ConfigurationError, RefusalError
from src.core.logging import get_logger
from src.generator import GenSpec, generate
from src.model.schemas import ApproxParams, BaseSchema, ProbStream

logger = get_logger(__name__)


class SweepSpec(BaseSchema):
    """Grid of benchmark cells; every list is one axis"""

    m: list[int] = Field(default=[200], min_length=1)
    n: list[int] = Field(default=[100], min_length=1)
    l: list[int] = Field(default=[2], min_length=1)
    bot_mass: list[float] = Field(default=[0.2], min_length=1)
    value_skew: Literal["uniform", "zipf"] = "uniform"
    epsilon: list[float] = Field(default=[0.1, 0.2, 0.4], min_length=1)
    delta: list[float] = Field(default=[0.1], min_length=1)
    seeds: int = Field(default=5, ge=1)
    stream_seed: int = Field(default=0, ge=0)

    @classmethod
    def from_yaml(cls, path: str | Path) -> SweepSpec:
        """
        Load a sweep from a YAML mapping of axis name to value or list.

        Raises:
            ConfigurationError: If the file is missing, unreadable YAML or not a mapping
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"sweep file not found: {path}")
        try:
            with open(path, encoding="utf-8") as f:
                raw = yaml.safe_load(f) or {}
        except (yaml.YAMLError, UnicodeDecodeError) as e:
            raise ConfigurationError(f"sweep file {path} is not valid YAML: {e}")
        if not isinstance(raw, dict):
            raise ConfigurationError(f"sweep file {path} must hold a mapping")
        for key in ("m", "n", "l", "bot_mass", "epsilon", "delta"):
            if key in raw and not isinstance(raw[key], list):
                raw[key] = [raw[key]]
        return cls(**raw)

    def cells(self) -> list[tuple[GenSpec, float, float, int]]:
        """(stream spec, epsilon, delta, estimator seed) per row"""
        cells = []
        for m, n, l, bot, eps, delta in itertools.product(
            self.m, self.n, self.l, self.bot_mass, self.epsilon, self.delta
        ):
            spec = GenSpec(m=m, n=n, l=l, bot_mass=bot, value_skew=self.value_skew, seed=self.stream_seed)
            cells.extend((spec, eps, delta, seed) for seed in range(self.seeds))
        return cells


def relative_error(estimate: float | None, reference: float | None) -> float | None:
    if estimate is None or reference is None:
        return None
    if reference == 0.0:
        return 0.0 if estimate == 0.0 else math.inf
    return abs(estimate - reference) / abs(reference)


class BenchmarkService:
    """Accuracy and state-size sweeps"""

    def __init__(self, max_workers: int | None = None):
        """
        Args:
            max_workers: Threads used for cells (default settings.bench_max_workers)
        """
        self.max_workers = max_workers or settings.bench_max_workers
        self._references: dict[GenSpec, tuple[ProbStream, dict[str, Any]]] = {}

    def reference(self, spec: GenSpec) -> tuple[ProbStream, dict[str, Any]]:
        """Generated stream and its exact aggregates, computed once per spec"""
        cached = self._references.get(spec)
        if cached is None:
            stream = generate(spec)
            full_band = avg_dp(stream, w=max(1, stream.m))
            exact = {
                "avg_exact": full_band.average() if stream.m else None,
                "distinct_exact": distinct_exact(stream),
                "repeat_rate_exact": repeat_rate_exact(stream),
            }
            cached = (stream, exact)
            self._references[spec] = cached
        return cached

    def run_cell(self, spec: GenSpec, epsilon: float, delta: float, seed: int) -> dict[str, Any]:
        """One row: every estimator on the spec's stream with the given parameters"""
        stream, exact = self.reference(spec)
        params = ApproxParams(epsilon=epsilon, delta=delta, seed=seed)

        avg = AverageEstimator(epsilon, stream.m, stream.n)
        distinct = DistinctEstimator(params, stream.n)
        repeat = RepeatRateEstimator(params, stream.n)
        median = QuantileEstimator(epsilon, copy_multiplier(stream), n=stream.n)
        estimators = (avg, distinct, repeat, median)

        started = time.perf_counter()
        for item in stream.items:
            for estimator in estimators:
                estimator.update(item)
        elapsed = time.perf_counter() - started

        row: dict[str, Any] = {
            "m": spec.m,
            "n": spec.n,
            "l": spec.l,
            "bot_mass": spec.bot_mass,
            "value_skew": spec.value_skew,
            "stream_seed": spec.seed,
            "epsilon": epsilon,
            "delta": delta,
            "seed": seed,
            **exact,
        }

        try:
            row["avg"] = avg.result()
            row["avg_regime"] = avg.variant
        except RefusalError:
            row["avg"], row["avg_regime"] = None, "undefined"
        row["distinct"] = distinct.result()
        row["distinct_variant"] = distinct.variant
        row["repeat_rate"] = repeat.result()
        try:
            row["median"] = median.result()
            row["median_ok"] = check_approx_median(stream, row["median"], epsilon)
        except RefusalError:
            row["median"], row["median_ok"] = None, None

        row["avg_rel_err"] = relative_error(row["avg"], exact["avg_exact"])
        row["distinct_rel_err"] = relative_error(row["distinct"], exact["distinct_exact"])
        row["repeat_rate_rel_err"] = relative_error(row["repeat_rate"], exact["repeat_rate_exact"])
        for estimator in estimators:
            row.update(estimator.state_sizes)
        row["pass_seconds"] = elapsed
        return row

    def run(self, sweep: SweepSpec) -> pl.DataFrame:
        """Evaluate every cell; rows come back in grid order"""
        cells = sweep.cells()
        logger.info(f"Benchmark sweep: {len(cells)} cells on {self.max_workers} worker(s)")

        # Reference streams are shared across cells; build them before fanning out
        for spec in {cell[0] for cell in cells}:
            self.reference(spec)

        if self.max_workers == 1:
            rows = [self.run_cell(*cell) for cell in cells]
        else:
            with concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                rows = list(executor.map(lambda cell: self.run_cell(*cell), cells))

        return pl.DataFrame(rows, infer_schema_length=None)

    def run_to_csv(self, sweep: SweepSpec, output: str | Path) -> pl.DataFrame:
        df = self.run(sweep)
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        df.write_csv(output)
        logger.info(f"Wrote {len(df)} benchmark rows to {output}")
        return df
