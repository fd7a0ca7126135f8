"""
Tables of hyperbolic homology-sphere invariants (volume, Chern-Simons).
"""

import csv
import logging
import math
from dataclasses import dataclass

from apps.errors import ConfigError, DomainError, StorageError
from apps.topohiggs.config import INVARIANT_COLUMNS, INVARIANTS_CSV

logger = logging.getLogger("dualmeissner.topohiggs.invariants")


@dataclass(frozen=True)
class TopoInvariants:
    name: str
    volume: float
    cs: float

    def __post_init__(self):
        if not math.isfinite(self.volume) or self.volume <= 0.0:
            raise DomainError(f"{self.name}: volume must be > 0, got {self.volume}", key='higgsmass.vol')
        if not math.isfinite(self.cs) or self.cs == 0.0:
            raise DomainError(f"{self.name}: Chern-Simons invariant must be nonzero, got {self.cs}", key='higgsmass.cs')


def load_invariants(path=None):
    """Read a ``name,volume,cs`` CSV; defaults to the bundled table."""
    path = path or INVARIANTS_CSV
    try:
        with open(path, newline='', encoding='utf-8') as handle:
            reader = csv.DictReader(handle)
            missing = [column for column in INVARIANT_COLUMNS if column not in (reader.fieldnames or [])]
            if missing:
                raise ConfigError(f"{path}: missing column(s) {', '.join(missing)}", line=1)
            table = []
            for line, row in enumerate(reader, start=2):
                try:
                    volume, cs = float(row['volume']), float(row['cs'])
                except (TypeError, ValueError):
                    raise ConfigError(f"{path}: volume and cs must be numbers", line=line)
                try:
                    table.append(TopoInvariants(row['name'].strip(), volume, cs))
                except DomainError as exc:
                    raise DomainError(f"{path}: {exc.message}", line=line)
    except OSError as exc:
        raise StorageError(f"cannot read invariants table {path}: {exc}")
    logger.debug(f"Loaded {len(table)} invariant row(s) from {path}")
    return table


def find_invariants(name, path=None):
    for entry in load_invariants(path):
        if entry.name == name:
            return entry
    raise ConfigError(f"no invariants named {name!r} in {path or INVARIANTS_CSV}", key='higgsmass.name')
