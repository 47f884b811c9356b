"""
ProbStream JSON Lines Reader

Each line is a JSON array of [value, prob] pairs, e.g. ``[[3,0.5],[7,0.25]]``;
``[]`` is an all-bottom item. An optional first line ``{"n": N}`` declares
the domain size. ``-`` reads standard input.
"""

from __future__ import annotations

import json
import sys
from collections.abc import Iterator
from pathlib import Path
from typing import IO

from src.core.exceptions import (
    ConfigurationError,
    StreamFileNotFoundError,
    StreamFormatError,
    StreamValidationError,
    ValueOutOfDomain,
)
from src.core.logging import get_logger
from src.model.schemas import ProbItem, ProbStream
from src.model.validation import validate_item

logger = get_logger(__name__)

STDIN = "-"


def _at_line(error: StreamValidationError, line_number: int) -> StreamValidationError:
    """Copy of a model error with the line number prefixed"""
    if isinstance(error, StreamFormatError):
        if error.line_number is not None:
            return error
        return StreamFormatError(str(error), line_number)
    return type(error)(f"line {line_number}: {error}")


def parse_line(text: str, line_number: int | None = None, tol: float | None = None) -> ProbItem:
    """
    Parse one item line.

    Raises:
        StreamFormatError: If the line is not a JSON array of [value, prob] pairs
        StreamValidationError: If the pairs violate the stream model
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise StreamFormatError(f"malformed JSON ({e.msg})", line_number)

    if not isinstance(raw, list):
        raise StreamFormatError("expected a JSON array of [value, prob] pairs", line_number)
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise StreamFormatError(f"expected a [value, prob] pair, got {pair!r}", line_number)

    try:
        return validate_item(raw, tol)
    except StreamValidationError as e:
        if line_number is None:
            raise
        raise _at_line(e, line_number) from e


def parse_header(text: str, line_number: int = 1) -> int:
    """
    Parse the ``{"n": N}`` header line and return N.

    Raises:
        StreamFormatError: If the header is malformed
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise StreamFormatError(f"malformed header ({e.msg})", line_number)

    n = raw.get("n") if isinstance(raw, dict) else None
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise StreamFormatError(f'header must be {{"n": N}} with integer N >= 1, got {text.strip()}', line_number)
    return n


class StreamReader:
    """Single-pass reader over a stream file or standard input"""

    def __init__(self, source: str | Path = STDIN, n: int | None = None, tol: float | None = None):
        """
        Initialize stream reader.

        Args:
            source: Path to a JSON Lines file, or "-" for standard input
            n: Domain size; overrides the file header when given
            tol: Probability-sum slack (default settings.tol_parse)

        Raises:
            StreamFileNotFoundError: If the file doesn't exist
        """
        self.source = str(source)
        self.from_stdin = self.source == STDIN
        if not self.from_stdin and not Path(self.source).is_file():
            raise StreamFileNotFoundError(f"stream file not found: {self.source}")

        self.n = n
        self.tol = tol
        self.header_n: int | None = None
        self.lines_read = 0

        self._handle: IO | None = None
        self._lines: Iterator[tuple[int, str]] | None = None
        self._buffered: tuple[int, str] | None = None
        self._header_checked = False

    @property
    def domain_n(self) -> int | None:
        """Domain size from the flag, else from the header"""
        return self.n if self.n is not None else self.header_n

    def read_header(self) -> int | None:
        """Consume the header line if the stream starts with one; returns its n"""
        if self._header_checked:
            return self.header_n
        self._header_checked = True

        first = self._next_line()
        if first is None:
            return None
        line_number, text = first
        if text.lstrip().startswith("{"):
            self.header_n = parse_header(text, line_number)
            logger.debug(f"Stream header declares n={self.header_n}")
        else:
            self._buffered = first
        return self.header_n

    def items(self) -> Iterator[ProbItem]:
        """
        Yield items in stream order.

        Raises:
            StreamFormatError: On malformed lines, with the line number
            ValueOutOfDomain: If a value exceeds the domain size
        """
        self.read_header()
        domain = self.domain_n
        try:
            while (line := self._next_line()) is not None:
                line_number, text = line
                item = parse_line(text, line_number, self.tol)
                if domain is not None and item.tuples and max(item.values) > domain:
                    raise ValueOutOfDomain(f"line {line_number}: value {max(item.values)} exceeds n={domain}")
                yield item
        finally:
            self.close()

    def read_stream(self) -> ProbStream:
        """Materialize the whole stream; n is inferred from the values when not declared"""
        items = list(self.items())
        stream = ProbStream.from_items(items, n=self.domain_n)
        logger.info(f"Read {stream.m} items (n={stream.n}, l_max={stream.l_max}) from {self.source}")
        return stream

    def close(self) -> None:
        if self._handle is not None and not self.from_stdin:
            self._handle.close()
        self._handle = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()

    def _next_line(self) -> tuple[int, str] | None:
        if self._buffered is not None:
            line, self._buffered = self._buffered, None
            return line
        if self._lines is None:
            # Bytes are decoded line by line so an encoding error names its line
            if self.from_stdin:
                self._handle = getattr(sys.stdin, "buffer", sys.stdin)
            else:
                self._handle = open(self.source, "rb")  # noqa: SIM115
            self._lines = enumerate(self._handle, start=1)
        for line_number, raw in self._lines:
            self.lines_read = line_number
            text = decode_line(raw, line_number)
            if text.strip():
                return line_number, text
        return None


def decode_line(raw: bytes | str, line_number: int) -> str:
    """
    Decode one raw line as UTF-8.

    Raises:
        StreamFormatError: If the bytes are not valid UTF-8
    """
    if isinstance(raw, str):
        return raw
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise StreamFormatError(f"invalid UTF-8 at byte {e.start}", line_number)


def read_items(source: str | Path = STDIN, n: int | None = None) -> tuple[int | None, Iterator[ProbItem]]:
    """Header n (None without a header) and a lazy iterator over the items"""
    reader = StreamReader(source, n)
    return reader.read_header(), reader.items()


def read_stream(source: str | Path = STDIN, n: int | None = None) -> ProbStream:
    """Read a whole stream file into a ProbStream"""
    return StreamReader(source, n).read_stream()


def prescan(source: str | Path) -> tuple[int, int]:
    """
    Count item lines and tuples without parsing JSON.

    Returns:
        (m, total tuples); the tuple count is the number of '[' per line minus one

    Raises:
        ConfigurationError: If asked to prescan standard input
        StreamFileNotFoundError: If the file doesn't exist
        StreamFormatError: If a line is not valid UTF-8
    """
    if str(source) == STDIN:
        raise ConfigurationError("standard input cannot be prescanned; pass an item-count hint")
    path = Path(source)
    if not path.is_file():
        raise StreamFileNotFoundError(f"stream file not found: {source}")

    m = 0
    tuples = 0
    with path.open("rb") as handle:
        for line_number, raw in enumerate(handle, start=1):
            stripped = decode_line(raw, line_number).lstrip()
            if stripped.startswith("["):
                m += 1
                tuples += max(0, stripped.count("[") - 1)
    logger.debug(f"Prescan of {path.name}: m={m}, tuples={tuples}")
    return m, tuples
