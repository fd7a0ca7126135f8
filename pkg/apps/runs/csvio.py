"""
CSV writing for run outputs.

Floats are written with 17 significant digits so that a rerun of the same
configuration reproduces every file byte for byte.
"""

import csv
import logging
import math
from pathlib import Path

import numpy as np

from apps.errors import StorageError

logger = logging.getLogger("dualmeissner.runs.csvio")


def format_value(value):
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        return format(value, '.17g')
    if value is None:
        return ''
    return str(value)


class CsvStream:
    """Row-at-a-time writer for long runs; the header is written on open."""

    def __init__(self, path, header):
        self.path = Path(path)
        self.header = tuple(header)
        self._handle = None
        self._writer = None
        self.rows = 0

    def __enter__(self):
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._handle = open(self.path, 'w', newline='', encoding='utf-8')
        except OSError as exc:
            raise StorageError(f"cannot open {self.path} for writing: {exc}")
        self._writer = csv.writer(self._handle, lineterminator='\n')
        self.write_row(self.header)
        self.rows = 0
        return self

    def write_row(self, row):
        row = list(row)
        if len(row) != len(self.header):
            raise ValueError(f"{self.path.name}: row has {len(row)} values, header has {len(self.header)}")
        try:
            self._writer.writerow([format_value(value) for value in row])
            self._handle.flush()
        except OSError as exc:
            raise StorageError(f"write to {self.path} failed: {exc}")
        self.rows += 1

    def __exit__(self, exc_type, exc, tb):
        if self._handle is not None:
            try:
                self._handle.close()
            except OSError as close_exc:
                if exc is None:
                    raise StorageError(f"closing {self.path} failed: {close_exc}")
        return False


def write_csv(path, header, rows):
    """Write a complete table and return its path."""
    with CsvStream(path, header) as stream:
        for row in rows:
            stream.write_row(row)
    logger.debug(f"Wrote {stream.rows} row(s) to {path}")
    return Path(path)


def read_csv(path):
    """Rows of a CSV file as dicts of strings."""
    try:
        with open(path, newline='', encoding='utf-8') as handle:
            return list(csv.DictReader(handle))
    except OSError as exc:
        raise StorageError(f"cannot read {path}: {exc}")
