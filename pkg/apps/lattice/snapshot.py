"""
Binary lattice snapshots.

Layout (little-endian):

    8s   magic  "SU2LAT\\0\\0"
    u32  version (1)
    4u32 dims Lx, Ly, Lz, Lt
    f64  beta
    u64  sweep index
    f64  links, 4 per quaternion, site-major with x fastest, direction minor
"""

import hashlib
import logging
import struct
from pathlib import Path

import numpy as np

from apps.errors import ConfigError, SnapshotError, StorageError
from apps.lattice.config import LINK_NORM_TOL, SNAPSHOT_MAGIC, SNAPSHOT_VERSION, validate_dims
from apps.lattice.field import GaugeField

logger = logging.getLogger("dualmeissner.lattice.snapshot")

HEADER = struct.Struct("<8sI4IdQ")


def _to_file_order(links):
    # (mu, x, y, z, t, q) -> (t, z, y, x, mu, q)
    return np.ascontiguousarray(links.transpose(4, 3, 2, 1, 0, 5))


def _from_file_order(payload, dims):
    lx, ly, lz, lt = dims
    ordered = payload.reshape(lt, lz, ly, lx, 4, 4)
    return np.ascontiguousarray(ordered.transpose(4, 3, 2, 1, 0, 5))


def encode(field, beta, sweep):
    header = HEADER.pack(SNAPSHOT_MAGIC, SNAPSHOT_VERSION, *field.dims, float(beta), int(sweep))
    return header + _to_file_order(field.links).astype("<f8").tobytes()


def decode(blob, source="<bytes>"):
    """Parse snapshot bytes into (field, beta, sweep); SnapshotError on any corruption."""
    if len(blob) < HEADER.size:
        raise SnapshotError(f"{source}: truncated header ({len(blob)} bytes)")
    magic, version, lx, ly, lz, lt, beta, sweep = HEADER.unpack_from(blob)
    if magic != SNAPSHOT_MAGIC:
        raise SnapshotError(f"{source}: bad magic {magic!r}")
    if version != SNAPSHOT_VERSION:
        raise SnapshotError(f"{source}: unsupported version {version}")
    try:
        dims = validate_dims((lx, ly, lz, lt))
    except ConfigError as exc:
        raise SnapshotError(f"{source}: {exc.message}")
    expected = HEADER.size + lx * ly * lz * lt * 4 * 4 * 8
    if len(blob) != expected:
        raise SnapshotError(f"{source}: payload size {len(blob)} bytes, expected {expected}")
    payload = np.frombuffer(blob, dtype="<f8", offset=HEADER.size).astype(float)
    if not np.all(np.isfinite(payload)):
        raise SnapshotError(f"{source}: non-finite link components")
    field = GaugeField(dims, _from_file_order(payload, dims))
    if not field.is_normalized(LINK_NORM_TOL):
        raise SnapshotError(f"{source}: links not normalized (deviation {field.max_norm_deviation():.3e})")
    return field, beta, sweep


def write_snapshot(path, field, beta, sweep):
    """Write a snapshot and return the sha256 hex digest of the file."""
    blob = encode(field, beta, sweep)
    try:
        Path(path).write_bytes(blob)
    except OSError as exc:
        raise StorageError(f"could not write snapshot {path}: {exc}")
    logger.debug(f"Snapshot written to {path} (sweep {sweep})")
    return hashlib.sha256(blob).hexdigest()


def read_snapshot(path, expected_digest=None):
    """Read a snapshot, checking its sha256 against ``expected_digest`` when given."""
    try:
        blob = Path(path).read_bytes()
    except OSError as exc:
        raise SnapshotError(f"could not read snapshot {path}: {exc}")
    if expected_digest is not None:
        digest = hashlib.sha256(blob).hexdigest()
        if digest != expected_digest:
            raise SnapshotError(f"{path}: digest mismatch")
    return decode(blob, source=str(path))
