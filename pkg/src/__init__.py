"""
ProbStream Source Package

Single-pass aggregation over probabilistic streams.

Subpackages:
- core: Configuration, logging, exceptions
- model: Stream types and per-item quantities
- etl: JSON Lines stream reading and writing
- sketches: F0, F2 and quantile summaries for deterministic streams
- aggregates: COUNT, SUM, AVG, DISTINCT, REPEAT-RATE, MEDIAN estimators
- oracle: Exhaustive enumeration of induced streams
- generator: Seeded synthetic streams
- services: Single-pass aggregation runs and benchmark sweeps
- cli: Command-line interface
"""
