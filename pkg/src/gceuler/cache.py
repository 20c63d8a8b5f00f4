"""Versioned JSON result cache for the exact tables.

Entries are keyed by (command, parameters, schema version); values carry the
chi integers as decimal strings so nothing truncates at 64 bits.  Writes are
atomic (write-temp-then-rename) and every payload embeds a checksum: a
corrupt file is treated as a miss and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .euler_series import EulerTable

SCHEMA_VERSION = 1
ENV_CACHE_DIR = "GCEULER_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "gceuler"


def table_to_payload(table: EulerTable) -> dict:
    body = {
        "version": SCHEMA_VERSION,
        "kind": table.kind,
        "index": table.index_meaning,
        "method": table.method,
        "limit": table.limit,
        "values": {str(k): str(v) for k, v in sorted(table.values.items())},
    }
    body["checksum"] = _checksum(body)
    return body


def table_from_payload(payload: dict) -> EulerTable:
    body = {k: v for k, v in payload.items() if k != "checksum"}
    if payload.get("checksum") != _checksum(body):
        raise ValueError("cache checksum mismatch")
    if body.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported cache version {body.get('version')}")
    return EulerTable(
        kind=body["kind"],
        index_meaning=body["index"],
        values={int(k): int(v) for k, v in body["values"].items()},
        method=body["method"],
        limit=body["limit"],
    )


def _checksum(body: dict) -> str:
    canon = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory else default_cache_dir()

    def _path(self, key: dict) -> Path:
        canon = json.dumps(
            {**key, "version": SCHEMA_VERSION}, sort_keys=True, separators=(",", ":")
        )
        name = hashlib.sha256(canon.encode()).hexdigest()[:32]
        return self.directory / f"{name}.json"

    def get_table(self, key: dict) -> EulerTable | None:
        path = self._path(key)
        try:
            payload = json.loads(path.read_text())
            return table_from_payload(payload)
        except (OSError, ValueError, KeyError, json.JSONDecodeError):
            return None

    def put_table(self, key: dict, table: EulerTable) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        payload = table_to_payload(table)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh, sort_keys=True, indent=1)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
