"""
Shared fixtures for unit tests - small hand-checkable streams
"""

from pathlib import Path

import pytest

from src.model import ProbStream
from tests.strategies import deterministic, make_stream


@pytest.fixture
def two_item_stream() -> ProbStream:
    """<[(1, 1.0)], [(3, 0.5)]>: AVG 1.5 while SUM/COUNT is 5/3"""
    return make_stream([(1, 1.0)], [(3, 0.5)])


@pytest.fixture
def one_two_three() -> ProbStream:
    """Deterministic stream 1, 2, 3"""
    return deterministic(1, 2, 3)


@pytest.fixture
def write_lines(tmp_path: Path):
    """Write raw lines to a stream file and return its path"""

    def _write(*lines: str, name: str = "stream.jsonl") -> Path:
        path = tmp_path / name
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return path

    return _write
