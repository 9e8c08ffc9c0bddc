"""Serialize a RunReport as JSON, CSV or human-readable text.

JSON uses sorted keys and emits the results payload only, so documents
such as the ``space`` output can be fed back through ``--space-file``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any

FORMATS = ("json", "csv", "human")


@dataclass
class RunReport:
    subcommand: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    rows: list[dict[str, Any]] | None = None
    wall_time_ms: float = 0.0
    exit_code: int = 0


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def to_json(report: RunReport) -> str:
    return json.dumps(report.results, sort_keys=True, indent=2) + "\n"


def to_csv(report: RunReport) -> str:
    """Header row, then one row per record; flat key,value pairs when no table exists."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report.rows:
        header = list(report.rows[0])
        writer.writerow(header)
        for row in report.rows:
            writer.writerow([_cell(row.get(col)) for col in header])
    else:
        writer.writerow(["key", "value"])
        for key in sorted(report.results):
            writer.writerow([key, _cell(report.results[key])])
    return buf.getvalue()


def to_human(report: RunReport) -> str:
    lines = [f"embedlab {report.subcommand}"]
    for key in sorted(report.inputs):
        if report.inputs[key] is not None:
            lines.append(f"  --{key.replace('_', '-')} {_cell(report.inputs[key])}")
    lines.append("")
    for key in sorted(report.results):
        value = report.results[key]
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            lines.extend(f"  - {_cell(item)}" for item in value)
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{key}:")
            lines.extend(f"  {_cell(item)}" for item in value)
        else:
            lines.append(f"{key}: {_cell(value) if value != [] else '[]'}")
    return "\n".join(lines) + "\n"


def emit(report: RunReport, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "human":
        return to_human(report)
    raise ValueError(f"Unknown output format: {fmt}")
