"""
Unit tests for item validation and per-item quantities
"""

import pytest
from hypothesis import given, settings

from src.core.exceptions import (
    AllBotItem,
    DuplicateValue,
    NonPositiveProb,
    NonPositiveValue,
    ProbSumExceedsOne,
    StreamFormatError,
)
from src.model import ProbItem, cond_mean, p_bot, validate_item
from tests.strategies import prob_items


class TestValidateItem:
    """Test validate_item rules"""

    def test_valid_item(self):
        """Test tuples keep their order"""
        item = validate_item([(3, 0.5), (7, 0.25)])
        assert item.values == (3, 7)
        assert item.mass == 0.75

    def test_empty_item(self):
        """Test [] is a legal all-bottom item"""
        assert validate_item([]) == ProbItem()

    def test_sum_exceeds_one(self):
        """Test mass past 1 + tol is rejected"""
        with pytest.raises(ProbSumExceedsOne):
            validate_item([(1, 0.6), (2, 0.5)])

    def test_sum_within_tolerance(self):
        """Test float rounding just above 1 is accepted"""
        item = validate_item([(1, 0.7), (2, 0.2), (3, 0.1 + 1e-12)])
        assert p_bot(item) == 0.0

    def test_custom_tolerance(self):
        """Test tol argument widens the slack"""
        validate_item([(1, 0.6), (2, 0.401)], tol=0.01)

    @pytest.mark.parametrize("prob", [0.0, -0.1, float("nan"), float("inf")])
    def test_non_positive_prob(self, prob):
        """Test probabilities must be finite and > 0"""
        with pytest.raises(NonPositiveProb):
            validate_item([(1, prob)])

    @pytest.mark.parametrize("value", [0, -3])
    def test_non_positive_value(self, value):
        """Test values below 1 are rejected"""
        with pytest.raises(NonPositiveValue):
            validate_item([(value, 0.5)])

    def test_duplicate_value(self):
        """Test a value may appear once per item"""
        with pytest.raises(DuplicateValue):
            validate_item([(4, 0.2), (4, 0.3)])

    @pytest.mark.parametrize("pair", [(1,), (1, 0.5, 2), "ab"])
    def test_malformed_pair(self, pair):
        """Test pairs must have exactly two fields"""
        with pytest.raises(StreamFormatError):
            validate_item([pair])

    @pytest.mark.parametrize("pair", [(1.5, 0.5), (True, 0.5), ("1", 0.5), (1, "0.5")])
    def test_wrong_types(self, pair):
        """Test values must be integers and probabilities numbers"""
        with pytest.raises(StreamFormatError):
            validate_item([pair])


class TestPerItemQuantities:
    """Test p_bot and cond_mean"""

    def test_p_bot(self):
        """Test bottom mass is the uncovered remainder"""
        assert p_bot(validate_item([(5, 0.5)])) == 0.5
        assert p_bot(validate_item([])) == 1.0
        assert p_bot(validate_item([(5, 1.0)])) == 0.0

    def test_p_bot_clamped(self):
        """Test mass inside the tolerance band clamps to 0"""
        assert p_bot(validate_item([(1, 0.5), (2, 0.5 + 1e-12)])) == 0.0

    def test_cond_mean(self):
        """Test conditional mean normalizes by the mass"""
        assert cond_mean(validate_item([(2, 0.25), (6, 0.25)])) == pytest.approx(4.0)

    def test_cond_mean_all_bottom(self):
        """Test conditional mean of an empty item is refused"""
        with pytest.raises(AllBotItem):
            cond_mean(validate_item([]))

    @given(prob_items(n=50, max_tuples=4).filter(lambda item: len(item.tuples) > 0))
    @settings(max_examples=100, deadline=None)
    def test_cond_mean_within_value_range(self, item):
        """Test the conditional mean lies between the smallest and largest value"""
        values = [t.value for t in item.tuples]
        assert min(values) - 1e-9 <= cond_mean(item) <= max(values) + 1e-9
