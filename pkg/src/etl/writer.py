"""
ProbStream JSON Lines Writer

Writes the compact line format read by ``StreamReader``: an optional
``{"n": N}`` header, then one ``[[value,prob],...]`` array per item.
Probabilities are written as shortest round-trip floats, so a written stream
reads back bit-identical.
"""

from __future__ import annotations

import json
import sys
from collections.abc import Iterable
from pathlib import Path
from typing import TextIO

from src.core.logging import get_logger
from src.model.schemas import ProbItem, ProbStream

logger = get_logger(__name__)


def serialize_item(item: ProbItem) -> str:
    """One item as a compact JSON array"""
    return json.dumps([[t.value, t.prob] for t in item.tuples], separators=(",", ":"))


def serialize_header(n: int) -> str:
    return json.dumps({"n": n})


class StreamWriter:
    """Writes items line by line to a file or standard output"""

    def __init__(self, target: str | Path = "-"):
        """
        Args:
            target: Output path, or "-" for standard output
        """
        self.target = str(target)
        self.to_stdout = self.target == "-"
        self.items_written = 0
        self._handle: TextIO | None = None

    def __enter__(self):
        if self.to_stdout:
            self._handle = sys.stdout
        else:
            Path(self.target).parent.mkdir(parents=True, exist_ok=True)
            self._handle = open(self.target, "w", encoding="utf-8", newline="\n")  # noqa: SIM115
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._handle is not None:
            if self.to_stdout:
                self._handle.flush()
            else:
                self._handle.close()
        self._handle = None
        if exc_type is None:
            logger.info(f"Wrote {self.items_written} items to {self.target}")

    def write_header(self, n: int) -> None:
        self._handle.write(serialize_header(n) + "\n")

    def write_items(self, items: Iterable[ProbItem]) -> None:
        for item in items:
            self._handle.write(serialize_item(item) + "\n")
            self.items_written += 1


def write_stream(stream: ProbStream, target: str | Path = "-", header: bool = True) -> int:
    """
    Write a whole stream.

    Returns:
        Number of items written
    """
    with StreamWriter(target) as writer:
        if header:
            writer.write_header(stream.n)
        writer.write_items(stream.items)
        return writer.items_written
