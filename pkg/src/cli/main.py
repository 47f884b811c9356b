"""
ProbStream command line.

Subcommands:
    gen     write a synthetic stream file
    agg     compute aggregates in one pass and print a JSON report
    oracle  exact aggregates of a small stream by enumeration
    bench   accuracy and state-size sweep written as CSV

Exit codes: 0 success, 2 validation or flag error, 3 refusal or budget error.

Usage:
    probstream gen --m 100 --n 50 --l 2 --seed 7 -o s.jsonl
    probstream agg --stat avg --epsilon 0.1 s.jsonl
    probstream oracle --w 2 s.jsonl
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from src.core.config import settings
from src.core.exceptions import ConfigurationError, ProbStreamError
from src.core.logging import get_logger, setup_logging
from src.etl.reader import STDIN, StreamReader, prescan
from src.etl.writer import StreamWriter
from src.generator import GenSpec, generate_items
from src.services.aggregation_service import AggregationService, oracle_report
from src.services.benchmark_service import BenchmarkService, SweepSpec

logger = get_logger(__name__)

STAT_CHOICES = ["count", "sum", "avg", "distinct", "repeat-rate", "median", "quantile", "all"]


def cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        m=args.m,
        n=args.n,
        l=args.l,
        bot_mass=args.bot_mass,
        value_skew=args.skew,
        zipf_s=args.zipf_s,
        seed=args.seed,
    )
    items = generate_items(spec)
    with StreamWriter(args.output) as writer:
        if not args.no_header:
            writer.write_header(spec.n)
        writer.write_items(items)
    return 0


def cmd_agg(args: argparse.Namespace) -> int:
    m, tuples = args.m_hint, None
    if args.input != STDIN:
        # Files are always prescanned; the tuple count bounds MEDIAN's copy multiplier
        scanned_m, tuples = prescan(args.input)
        m = scanned_m if m is None else max(m, scanned_m)

    service = AggregationService(
        epsilon=args.epsilon,
        delta=args.delta,
        seed=args.seed,
        n=args.n,
        m=m,
        tuples=tuples,
        exact=args.exact,
        precision=args.precision,
        phi=args.phi,
        timings=args.timings,
    )
    with StreamReader(args.input, n=args.n) as reader:
        report = service.run_reader(reader, args.stat or ["all"])
    print(report.to_json())
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    with StreamReader(args.input, n=args.n) as reader:
        stream = reader.read_stream()
    print(oracle_report(stream, w=args.w).to_json())
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    if args.sweep:
        sweep = SweepSpec.from_yaml(args.sweep)
    else:
        overrides = {
            key: value
            for key, value in {
                "m": args.m,
                "n": args.n,
                "l": args.l,
                "bot_mass": args.bot_mass,
                "epsilon": args.epsilon,
                "delta": args.delta,
                "seeds": args.seeds,
                "stream_seed": args.stream_seed,
                "value_skew": args.skew,
            }.items()
            if value is not None
        }
        sweep = SweepSpec(**overrides)

    service = BenchmarkService(max_workers=args.workers)
    if args.output == "-":
        sys.stdout.write(service.run(sweep).write_csv())
    else:
        service.run_to_csv(sweep, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="probstream", description="Aggregates over probabilistic streams")
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help=f"Logging level on stderr (default {settings.log_level})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate a synthetic stream file")
    gen.add_argument("--m", type=int, required=True, help="Number of items")
    gen.add_argument("--n", type=int, required=True, help="Domain size")
    gen.add_argument("--l", type=int, default=1, help="Tuples per item")
    gen.add_argument("--bot-mass", type=float, default=0.0, help="Target average empty-outcome mass")
    gen.add_argument("--skew", choices=["uniform", "zipf"], default="uniform", help="Value distribution")
    gen.add_argument("--zipf-s", type=float, default=1.0, help="Zipf exponent")
    gen.add_argument("--seed", type=int, default=settings.default_seed)
    gen.add_argument("--no-header", action="store_true", help='Omit the {"n": N} header line')
    gen.add_argument("-o", "--output", default="-", help="Output file, - for stdout")
    gen.set_defaults(handler=cmd_gen)

    agg = sub.add_parser("agg", help="Compute aggregates in one pass")
    agg.add_argument("input", help="Stream file, - for stdin")
    agg.add_argument("--stat", action="append", choices=STAT_CHOICES, help="Aggregate (repeatable, default all)")
    agg.add_argument("--epsilon", type=float, default=settings.default_epsilon)
    agg.add_argument("--delta", type=float, default=settings.default_delta)
    agg.add_argument("--seed", type=int, default=settings.default_seed)
    agg.add_argument("--n", type=int, default=None, help="Domain size (overrides the file header)")
    agg.add_argument("--m-hint", type=int, default=None, help="Item count or an upper bound; required with stdin")
    agg.add_argument("--exact", action="store_true", help="Exact DISTINCT and REPEAT-RATE (O(n) memory)")
    agg.add_argument("--phi", type=float, default=0.5, help="Quantile fraction for --stat quantile")
    agg.add_argument("--precision", choices=["double", "exact"], default="double", help="AVG DP arithmetic")
    agg.add_argument("--timings", action="store_true", help="Report wall time of the pass")
    agg.set_defaults(handler=cmd_agg)

    oracle = sub.add_parser("oracle", help="Exact aggregates by enumeration")
    oracle.add_argument("input", help="Stream file, - for stdin")
    oracle.add_argument("--w", type=float, default=None, help="Band half-width for Pr[band event]")
    oracle.add_argument("--n", type=int, default=None, help="Domain size (overrides the file header)")
    oracle.set_defaults(handler=cmd_oracle)

    bench = sub.add_parser("bench", help="Accuracy and state-size sweep")
    bench.add_argument("--sweep", default=None, help="YAML sweep file (overrides the axis flags)")
    bench.add_argument("--m", type=int, nargs="+", default=None)
    bench.add_argument("--n", type=int, nargs="+", default=None)
    bench.add_argument("--l", type=int, nargs="+", default=None)
    bench.add_argument("--bot-mass", type=float, nargs="+", default=None)
    bench.add_argument("--epsilon", type=float, nargs="+", default=None)
    bench.add_argument("--delta", type=float, nargs="+", default=None)
    bench.add_argument("--seeds", type=int, default=None, help="Estimator seeds per configuration")
    bench.add_argument("--stream-seed", type=int, default=None, help="Generator seed of the benchmark streams")
    bench.add_argument("--skew", choices=["uniform", "zipf"], default=None)
    bench.add_argument("--workers", type=int, default=None, help="Threads for sweep cells")
    bench.add_argument("-o", "--output", default="-", help="CSV file, - for stdout")
    bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    try:
        return args.handler(args)
    except ProbStreamError as e:
        logger.debug(f"{type(e).__name__} in {args.command}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: invalid parameters: {e}", file=sys.stderr)
        return ConfigurationError.exit_code


if __name__ == "__main__":
    sys.exit(main())
