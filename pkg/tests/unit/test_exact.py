"""
Unit tests for the exact aggregates: COUNT, SUM, DISTINCT and REPEAT-RATE references
"""

import math

import pytest
from hypothesis import given

from src.aggregates import count, distinct_exact, repeat_rate_exact, sum
from src.aggregates.exact import CountEstimator, SumEstimator
from tests.strategies import deterministic, make_stream, prob_streams


class TestCount:
    """Test COUNT closed form"""

    def test_deterministic(self):
        """Test three certain items count 3"""
        assert count(deterministic(1, 1, 1)) == 3.0

    def test_half_item(self):
        """Test one item with mass 0.5"""
        assert count(make_stream([(5, 0.5)])) == 0.5

    def test_empty_stream(self):
        """Test the empty stream counts 0"""
        assert count(make_stream()) == 0.0


class TestSum:
    """Test SUM closed form"""

    def test_half_item(self):
        """Test 5 x 0.5"""
        assert sum(make_stream([(5, 0.5)])) == 2.5

    def test_two_items(self, two_item_stream):
        """Test 1 + 1.5"""
        assert sum(two_item_stream) == 2.5

    def test_all_bottom_items_add_nothing(self):
        """Test empty items contribute 0"""
        assert sum(make_stream([], [(4, 0.25)], [])) == 1.0

    def test_empty_stream(self):
        """Test the empty stream sums to 0"""
        assert sum(make_stream()) == 0.0

    def test_streaming_matches_function(self, two_item_stream):
        """Test the estimator objects give the function results"""
        assert SumEstimator().consume(two_item_stream.items).result() == sum(two_item_stream)
        assert CountEstimator().consume(two_item_stream.items).result() == count(two_item_stream)


class TestDistinctExact:
    """Test the product formula"""

    def test_same_value_twice(self):
        """Test 1 - 0.5^2"""
        assert distinct_exact(make_stream([(1, 0.5)], [(1, 0.5)])) == 0.75

    def test_deterministic(self):
        """Test two distinct values in 3, 3, 7"""
        assert distinct_exact(deterministic(3, 3, 7)) == 2.0

    def test_empty_stream(self):
        """Test no values, no distinct"""
        assert distinct_exact(make_stream()) == 0.0

    @given(prob_streams(max_items=12))
    def test_sandwich(self, stream):
        """Test 1 - exp(-COUNT) <= DISTINCT <= COUNT"""
        c = count(stream)
        d = distinct_exact(stream)
        assert d <= c + 1e-12
        if c > 0:
            assert d >= 1.0 - math.exp(-c) - 1e-12


class TestRepeatRateExact:
    """Test the frequency decomposition"""

    def test_single_item(self):
        """Test 0.25 + 0.25"""
        assert repeat_rate_exact(make_stream([(1, 0.5)])) == 0.5

    def test_deterministic(self):
        """Test classic F2 of 1, 1, 2"""
        assert repeat_rate_exact(deterministic(1, 1, 2)) == 5.0

    def test_empty_stream(self):
        """Test the empty stream has repeat rate 0"""
        assert repeat_rate_exact(make_stream()) == 0.0

    def test_two_items(self, two_item_stream):
        """Test 1^2 + 0.5^2 + 0.5 * 0.5"""
        assert repeat_rate_exact(two_item_stream) == pytest.approx(1.5)
