"""
ETL Package

Reading and writing probabilistic streams in the JSON Lines format.

Modules:
- reader: line-numbered parsing, header handling, prescan
- writer: compact serialization
"""

from src.etl.reader import StreamReader, parse_header, parse_line, prescan, read_items, read_stream
from src.etl.writer import StreamWriter, serialize_item, write_stream

__all__ = [
    "StreamReader",
    "StreamWriter",
    "parse_header",
    "parse_line",
    "prescan",
    "read_items",
    "read_stream",
    "serialize_item",
    "write_stream",
]
