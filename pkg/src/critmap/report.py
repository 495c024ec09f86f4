"""JSONL run records.

Each line is one JSON object with ``schema_version`` 1::

    {"schema_version": 1, "command": "rank", "parameters": {...}, "seed": 1,
     "started": "2026-01-01T00:00:00+00:00", "elapsed_ms": 3,
     "status": "pass", "results": {...}}

``results`` is a pure function of (command, parameters, seed).  Rationals are
``"p/q"`` strings, polynomials use the canonical term-list text, and no
floating-point literal is ever written.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "finding", "error")


@dataclass
class RunRecord:
    command: str
    parameters: Dict[str, Any]
    seed: int
    status: str
    results: Dict[str, Any]
    started: str = ""
    elapsed_ms: int = 0
    schema_version: int = field(default=SCHEMA_VERSION)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_json_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"), allow_nan=False)


def results_payload(results: Dict[str, Any]) -> str:
    """Canonical serialization of a results payload, for byte comparison."""
    return json.dumps(results, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _reject_floats(obj) -> None:
    if isinstance(obj, float):
        raise TypeError("floating-point values are not allowed in run records")
    if isinstance(obj, dict):
        for v in obj.values():
            _reject_floats(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _reject_floats(v)


def report_append(record: RunRecord, path) -> None:
    """Append ``record`` as one JSON line to ``path``."""
    _reject_floats(asdict(record))
    line = record.to_json_line()
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(line + "\n")


def read_records(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
