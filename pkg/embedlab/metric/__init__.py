"""Finite truncations of M, exact distances and their validation."""

from .builder import build_n0_truncation, build_space, build_truncation, distance, rho
from .models import (
    PointKind,
    PointM,
    SpaceLabel,
    TruncatedSpace,
    ValidationReport,
    Violation,
    parse_point,
)
from .oracle import bfs_distance, bfs_table, edge_graph
from .validation import validate_metric

__all__ = [
    "PointKind",
    "PointM",
    "SpaceLabel",
    "TruncatedSpace",
    "ValidationReport",
    "Violation",
    "bfs_distance",
    "bfs_table",
    "build_n0_truncation",
    "build_space",
    "build_truncation",
    "distance",
    "edge_graph",
    "parse_point",
    "rho",
    "validate_metric",
]
