"""
Run manifests: what was run, with which parameters, and the sha256 digest
of every file it produced.

The manifest is written once by the orchestrator, atomically (temp file in
the run directory followed by ``os.replace``).
"""

import hashlib
import json
import logging
import os
import tempfile
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional

from apps.errors import ManifestError, StorageError
from apps.runs.config import MANIFEST_NAME, MANIFEST_STATUS, code_version

logger = logging.getLogger("dualmeissner.runs.manifest")

CHUNK_SIZE = 1024 * 1024


def file_digest(path):
    """sha256 hex digest of a file, read in chunks."""
    digest = hashlib.sha256()
    try:
        with open(path, 'rb') as handle:
            for chunk in iter(lambda: handle.read(CHUNK_SIZE), b''):
                digest.update(chunk)
    except OSError as exc:
        raise StorageError(f"cannot hash {path}: {exc}")
    return digest.hexdigest()


def _now():
    return datetime.now(timezone.utc).isoformat()


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(item) for item in value]
    if isinstance(value, list):
        return [_jsonable(item) for item in value]
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, Path):
        return str(value)
    return value


@dataclass
class OutputFile:
    path: str
    sha256: str
    bytes: int


@dataclass
class RunManifest:
    kind: str
    config: Dict
    seed: Optional[int] = None
    code_version: str = field(default_factory=code_version)
    started_at: str = field(default_factory=_now)
    finished_at: Optional[str] = None
    status: str = MANIFEST_STATUS['complete']
    error: Optional[str] = None
    outputs: List[OutputFile] = field(default_factory=list)

    def add_output(self, run_dir, path, digest=None):
        """Record ``path`` (absolute or relative to ``run_dir``) with its digest."""
        run_dir = Path(run_dir)
        path = Path(path)
        absolute = path if path.is_absolute() else run_dir / path
        relative = absolute.relative_to(run_dir).as_posix()
        entry = OutputFile(
            path=relative,
            sha256=digest or file_digest(absolute),
            bytes=absolute.stat().st_size,
        )
        self.outputs = [item for item in self.outputs if item.path != relative] + [entry]
        return entry

    def digests(self):
        return {item.path: item.sha256 for item in self.outputs}

    def to_dict(self):
        data = asdict(self)
        data['config'] = _jsonable(self.config)
        return data

    @classmethod
    def from_dict(cls, data):
        outputs = [OutputFile(**item) for item in data.get('outputs', [])]
        return cls(
            kind=data['kind'],
            config=data.get('config', {}),
            seed=data.get('seed'),
            code_version=data.get('code_version', ''),
            started_at=data.get('started_at', ''),
            finished_at=data.get('finished_at'),
            status=data.get('status', MANIFEST_STATUS['complete']),
            error=data.get('error'),
            outputs=outputs,
        )

    def write(self, run_dir, status=None, error=None):
        """Finish the manifest and write it atomically into ``run_dir``."""
        self.status = status or self.status
        self.error = error
        self.finished_at = _now()
        run_dir = Path(run_dir)
        target = run_dir / MANIFEST_NAME
        payload = json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n'
        try:
            run_dir.mkdir(parents=True, exist_ok=True)
            with tempfile.NamedTemporaryFile('w', dir=run_dir, prefix='.manifest-', suffix='.tmp',
                                             delete=False, encoding='utf-8') as handle:
                handle.write(payload)
                handle.flush()
                os.fsync(handle.fileno())
                temp_path = handle.name
            os.replace(temp_path, target)
        except OSError as exc:
            raise StorageError(f"cannot write manifest {target}: {exc}")
        logger.info(f"Manifest written to {target} ({self.status}, {len(self.outputs)} file(s))")
        return target

    def write_partial(self, run_dir, error):
        """Best-effort manifest for an aborted run; never raises."""
        try:
            return self.write(run_dir, status=MANIFEST_STATUS['partial'], error=str(error))
        except StorageError as exc:
            logger.error(f"❌ Could not write partial manifest: {exc.message}")
            return None


def manifest_path(location):
    """Accept a run directory or a manifest file."""
    location = Path(location)
    return location / MANIFEST_NAME if location.is_dir() else location


def load_manifest(location):
    path = manifest_path(location)
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest {path} is not valid JSON: {exc}")
    try:
        return RunManifest.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise ManifestError(f"manifest {path} is missing fields: {exc}")


@dataclass
class VerifyReport:
    manifest: RunManifest
    checked: List[str] = field(default_factory=list)
    missing: List[str] = field(default_factory=list)
    mismatched: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.missing and not self.mismatched


def verify_manifest(location):
    """Recompute every digest listed in the manifest."""
    path = manifest_path(location)
    manifest = load_manifest(path)
    run_dir = path.parent
    report = VerifyReport(manifest=manifest)
    for item in manifest.outputs:
        target = run_dir / item.path
        if not target.is_file():
            report.missing.append(item.path)
            continue
        if file_digest(target) != item.sha256:
            report.mismatched.append(item.path)
            continue
        report.checked.append(item.path)
    logger.info(
        f"Verified {path}: {len(report.checked)} ok, "
        f"{len(report.missing)} missing, {len(report.mismatched)} mismatched"
    )
    return report
