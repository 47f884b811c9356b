"""
Unit tests for AggregationService
"""

import json

import pytest

from src.core.exceptions import ConfigurationError, DomainUnknown, UndefinedAverage
from src.etl.reader import StreamReader
from src.services.aggregation_service import ALL_STATS, AggregationService, expand_stats, oracle_report
from tests.strategies import make_stream


class TestExpandStats:
    """Test aggregate name resolution"""

    def test_all(self):
        assert expand_stats(["all"]) == list(ALL_STATS)

    def test_cli_spelling(self):
        """Test repeat-rate maps to repeat_rate"""
        assert expand_stats(["repeat-rate"]) == ["repeat_rate"]

    def test_deduplicated_in_order(self):
        assert expand_stats(["sum", "count", "sum"]) == ["sum", "count"]

    def test_unknown(self):
        with pytest.raises(ConfigurationError, match="unknown aggregate"):
            expand_stats(["mode"])


class TestAggregationService:
    """Test single-pass runs and report assembly"""

    def test_two_item_stream(self, two_item_stream):
        """Test COUNT, SUM and AVG in one pass"""
        report = AggregationService(epsilon=0.1).run_stream(two_item_stream, ["count", "sum", "avg"])
        assert report.count == 1.5
        assert report.sum == 2.5
        assert report.avg == 1.5
        assert report.avg_regime == "dp"
        assert report.params["m"] == 2
        assert report.params["n"] == 3

    def test_all_stats(self, one_two_three):
        """Test every aggregate and variant key is present"""
        report = AggregationService(epsilon=0.25, delta=0.25).run_stream(one_two_three, ["all"])
        data = json.loads(report.to_json())
        for key in ("count", "sum", "avg", "distinct", "repeat_rate", "median"):
            assert key in data
        assert data["median"] == 2
        assert data["distinct_variant"] == "sketch"
        assert data["repeat_rate_variant"] == "sketch"
        assert "timings" not in data

    def test_quantile_echoes_phi(self, one_two_three):
        report = AggregationService(phi=1.0).run_stream(one_two_three, ["quantile"])
        assert report.quantile == 3
        assert report.params["phi"] == 1.0

    def test_exact_mode(self, two_item_stream):
        """Test exact DISTINCT and REPEAT-RATE tags"""
        report = AggregationService(exact=True).run_stream(two_item_stream, ["distinct", "repeat_rate"])
        assert report.distinct == 1.5
        assert report.distinct_variant == "exact"
        assert report.params["exact"] is True
        assert "distinct_exact_entries" in report.state_sizes

    def test_timings(self, two_item_stream):
        """Test wall times only appear when asked for"""
        report = AggregationService(timings=True).run_stream(two_item_stream, ["count"])
        assert set(report.timings) == {"pass_seconds", "finalize_seconds"}

    def test_avg_needs_item_count(self, two_item_stream):
        """Test AVG refuses to start without m"""
        with pytest.raises(ConfigurationError, match="AVG"):
            AggregationService().run(two_item_stream.items, ["avg"])

    def test_median_needs_item_count(self, two_item_stream):
        with pytest.raises(ConfigurationError):
            AggregationService().run(two_item_stream.items, ["median"])

    def test_sketch_needs_domain(self, two_item_stream):
        """Test DISTINCT without n raises DomainUnknown"""
        with pytest.raises(DomainUnknown):
            AggregationService().run(two_item_stream.items, ["distinct"])

    def test_refusal_propagates(self):
        """Test AVG of an all-bottom stream is refused, not reported as null"""
        with pytest.raises(UndefinedAverage):
            AggregationService().run_stream(make_stream([], [], n=2), ["all"])

    def test_reader_header_supplies_domain(self, write_lines):
        """Test run_reader takes n from the file header"""
        path = write_lines('{"n": 7}', "[[1,1.0]]", "[[3,0.5]]")
        service = AggregationService(epsilon=0.5, delta=0.5, m=2)
        with StreamReader(path) as reader:
            report = service.run_reader(reader, ["distinct", "avg"])
        assert report.params["n"] == 7
        assert report.avg == 1.5


class TestOracleReport:
    """Test the oracle's report shape"""

    def test_report(self, two_item_stream):
        report = oracle_report(two_item_stream, w=2)
        assert report.command == "oracle"
        assert report.avg == pytest.approx(1.5)
        assert report.pr_c_w == pytest.approx(1.0)
        assert report.outcomes == 2
        assert report.params == {"n": 3, "m": 2, "w": 2}

    def test_undefined_avg_left_out(self):
        report = oracle_report(make_stream([], n=1))
        assert "avg" not in json.loads(report.to_json())
