"""JSON and CSV documents for truncated spaces.

Schema: {"label": "M"|"N0", "n": int, "points": [str], "dist": [[int]]}.
``space_from_document`` accepts anything ``space_to_document`` emits and
rebuilds an equal object.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from embedlab.common.errors import ValidationError

from .models import SpaceLabel, TruncatedSpace, parse_point


def space_to_document(space: TruncatedSpace) -> dict:
    return space.to_dict()


def space_from_document(doc: dict) -> TruncatedSpace:
    if not isinstance(doc, dict):
        raise ValidationError("Space document must be a JSON object")
    missing = {"label", "n", "points", "dist"} - set(doc)
    if missing:
        raise ValidationError(f"Space document is missing keys: {sorted(missing)}")
    try:
        label = SpaceLabel(doc["label"])
    except ValueError:
        raise ValidationError(f"Unknown space label: {doc['label']!r}") from None
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValidationError(f"Space document field n must be an integer, got {n!r}")
    if not isinstance(doc["points"], list) or not isinstance(doc["dist"], list):
        raise ValidationError("Space document fields points and dist must be lists")
    points = tuple(parse_point(p) for p in doc["points"])
    rows = doc["dist"]
    if any(not isinstance(row, list) for row in rows):
        raise ValidationError("Every row of dist must be a list")
    if len(rows) != len(points) or any(len(row) != len(points) for row in rows):
        raise ValidationError("Distance matrix must be square and match the point list")
    if any(isinstance(v, bool) or not isinstance(v, int) for row in rows for v in row):
        raise ValidationError("Distances must be integers")
    return TruncatedSpace(n=n, points=points, dist=rows, label=label)



def load_space_file(path: str | Path) -> TruncatedSpace:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    with open(path) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"{path} is not valid JSON: {e}") from None
    return space_from_document(doc)


def space_rows(space: TruncatedSpace) -> list[dict]:
    """One record per point: its name, then its distance to every point by name."""
    names = space.point_names()
    return [
        {"point": name, **dict(zip(names, row, strict=True))}
        for name, row in zip(names, space.dist.tolist(), strict=True)
    ]


def space_to_csv(space: TruncatedSpace) -> str:
    """Header row of point names, then one row per point."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["point", *space.point_names()])
    for row in space_rows(space):
        writer.writerow(row.values())
    return buf.getvalue()

