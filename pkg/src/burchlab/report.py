"""Report assembly and serialization.

Reports are plain dicts with a fixed field order, JSON-serialized with
stable formatting so identical jobs produce byte-identical files; the
timing fields are excluded from comparisons.
"""

from __future__ import annotations

import json

SCHEMA_VERSION = 1

TIMING_KEYS = {"timingSeconds"}


def assemble(command: str, job_dict: dict, body: dict, exit_code: int) -> dict:
    report = {
        "schemaVersion": SCHEMA_VERSION,
        "command": command,
        "job": job_dict,
        "exitCode": exit_code,
    }
    report.update(body)
    return report


def serialize(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def reports_equal(a: dict, b: dict) -> bool:
    return strip_timing(a) == strip_timing(b)
