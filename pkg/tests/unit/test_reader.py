"""
Unit tests for StreamReader

Tests header handling, line-numbered errors, domain checks and prescan.
"""

import io
from pathlib import Path

import pytest

from src.core.exceptions import (
    ConfigurationError,
    DuplicateValue,
    ProbSumExceedsOne,
    StreamFileNotFoundError,
    StreamFormatError,
    ValueOutOfDomain,
)
from src.etl.reader import StreamReader, parse_header, parse_line, prescan, read_items, read_stream


class TestParseLine:
    """Test single-line parsing"""

    def test_item(self):
        """Test tuples keep stream order"""
        item = parse_line("[[3,0.5],[7,0.25]]")
        assert item.values == (3, 7)

    def test_empty_item(self):
        """Test [] is an all-bottom item"""
        assert len(parse_line("[]")) == 0

    def test_malformed_json(self):
        """Test broken JSON reports its line"""
        with pytest.raises(StreamFormatError, match="line 4"):
            parse_line("[[1,0.5]", line_number=4)

    def test_not_an_array(self):
        """Test objects are not items"""
        with pytest.raises(StreamFormatError):
            parse_line('{"value": 1}')

    def test_bad_pair(self):
        """Test a flat array is not a list of pairs"""
        with pytest.raises(StreamFormatError):
            parse_line("[1, 0.5]")

    def test_model_error_gets_line_number(self):
        """Test validation errors keep their type and gain the line"""
        with pytest.raises(ProbSumExceedsOne, match="line 2: "):
            parse_line("[[1,0.6],[2,0.6]]", line_number=2)
        with pytest.raises(DuplicateValue, match="line 3: "):
            parse_line("[[1,0.2],[1,0.2]]", line_number=3)


class TestParseHeader:
    """Test the {"n": N} header"""

    def test_header(self):
        assert parse_header('{"n": 50}') == 50

    @pytest.mark.parametrize("text", ['{"n": 0}', '{"n": "5"}', '{"m": 5}', '{"n": true}', "{n: 5}"])
    def test_bad_header(self, text):
        """Test malformed headers are rejected"""
        with pytest.raises(StreamFormatError):
            parse_header(text)


class TestStreamReader:
    """Test whole-file reading"""

    def test_header_sets_domain(self, write_lines):
        """Test the header n is used"""
        path = write_lines('{"n": 10}', "[[3,0.5]]", "[]")
        stream = read_stream(path)
        assert stream.n == 10
        assert stream.m == 2

    def test_domain_inferred(self, write_lines):
        """Test n is the largest value when there is no header"""
        stream = read_stream(write_lines("[[3,0.5]]", "[[8,1.0]]"))
        assert stream.n == 8

    def test_flag_overrides_header(self, write_lines):
        """Test an explicit n wins over the header"""
        path = write_lines('{"n": 10}', "[[3,0.5]]")
        assert read_stream(path, n=20).n == 20

    def test_blank_lines_skipped(self, write_lines):
        """Test empty lines are not items but still count for line numbers"""
        path = write_lines("[[1,0.5]]", "", "   ", "[[2,0.5]]", "oops")
        reader = StreamReader(path)
        with pytest.raises(StreamFormatError, match="line 5"):
            list(reader.items())

    def test_out_of_domain(self, write_lines):
        """Test values above the header n are rejected with the line"""
        path = write_lines('{"n": 2}', "[[1,0.5]]", "[[3,0.5]]")
        with pytest.raises(ValueOutOfDomain, match="line 3"):
            read_stream(path)

    def test_header_without_items(self, write_lines):
        """Test a header-only file is the empty stream"""
        stream = read_stream(write_lines('{"n": 4}'))
        assert stream.m == 0
        assert stream.n == 4

    def test_read_header_buffers_first_item(self, write_lines):
        """Test peeking for a header does not lose the first item"""
        reader = StreamReader(write_lines("[[1,0.5]]", "[[2,0.5]]"))
        assert reader.read_header() is None
        assert len(list(reader.items())) == 2

    def test_missing_file(self, tmp_path: Path):
        """Test a missing path raises StreamFileNotFoundError"""
        with pytest.raises(StreamFileNotFoundError):
            StreamReader(tmp_path / "absent.jsonl")

    def test_stdin(self, monkeypatch):
        """Test "-" reads standard input"""
        monkeypatch.setattr("sys.stdin", io.StringIO('{"n": 5}\n[[1,1.0]]\n[[5,0.5]]\n'))
        stream = read_stream("-")
        assert stream.m == 2
        assert stream.n == 5

    def test_stdin_bytes(self, monkeypatch):
        """Test a binary standard input is decoded line by line"""
        stdin = io.TextIOWrapper(io.BytesIO(b'{"n": 5}\n[[5,0.5]]\n'), encoding="utf-8")
        monkeypatch.setattr("sys.stdin", stdin)
        assert read_stream("-").m == 1

    def test_invalid_utf8_names_line(self, tmp_path: Path):
        """Test undecodable bytes raise StreamFormatError with their line"""
        path = tmp_path / "bad.jsonl"
        path.write_bytes(b"[[1,0.5]]\n[[2,0.5\xff]]\n")
        with pytest.raises(StreamFormatError, match="line 2"):
            read_stream(path)

    def test_read_items(self, write_lines):
        """Test read_items returns the header n and a lazy item iterator"""
        header_n, items = read_items(write_lines('{"n": 6}', "[[1,0.5]]", "[[6,1.0]]"))
        assert header_n == 6
        assert [item.values for item in items] == [(1,), (6,)]

    def test_read_items_without_header(self, write_lines):
        header_n, items = read_items(write_lines("[[2,0.5]]"))
        assert header_n is None
        assert len(list(items)) == 1


class TestPrescan:
    """Test the counting pass"""

    def test_counts_items_and_tuples(self, write_lines):
        """Test m and total tuples without parsing"""
        path = write_lines('{"n": 9}', "[[1,0.5],[2,0.25]]", "[]", "", "[[9,1.0]]")
        assert prescan(path) == (3, 3)

    def test_stdin_refused(self):
        """Test standard input cannot be read twice"""
        with pytest.raises(ConfigurationError):
            prescan("-")

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(StreamFileNotFoundError):
            prescan(tmp_path / "absent.jsonl")

    def test_invalid_utf8_names_line(self, tmp_path: Path):
        """Test the counting pass reports undecodable bytes with their line"""
        path = tmp_path / "bad.jsonl"
        path.write_bytes(b'{"n": 3}\n\xfe\n')
        with pytest.raises(StreamFormatError, match="line 2"):
            prescan(path)
