"""Exhaustive metric checks; violations are data, never exceptions."""

from __future__ import annotations

import numpy as np

from .builder import closed_form
from .models import SpaceLabel, TruncatedSpace, ValidationReport, Violation
from .oracle import bfs_table

# Admissible off-diagonal values per label.
_VALUE_RANGE = {SpaceLabel.M: (1, 4), SpaceLabel.N0: (1, 2)}


def _shortcuts(dist: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """min over k of dist[i,k] + dist[k,j], and the minimizing k.

    One vectorized pass per intermediate point, so O(P^3) work in numpy;
    fine up to a few hundred points (M_8).
    """
    size = dist.shape[0]
    best = np.full(dist.shape, np.iinfo(np.int64).max, dtype=np.int64)
    via = np.zeros(dist.shape, dtype=np.int64)
    for k in range(size):
        through = dist[:, k, None] + dist[None, k, :]
        better = through < best
        best = np.where(better, through, best)
        via = np.where(better, k, via)
    return best, via


def validate_metric(space: TruncatedSpace, check_oracle: bool = True) -> ValidationReport:
    """Check zero diagonal, symmetry, value range, triangle inequality and,
    for labelled truncations, agreement with the closed form and the BFS oracle.
    """
    report = ValidationReport(space=space.describe())
    dist = space.dist
    names = space.point_names()
    size = len(space)

    for i in np.flatnonzero(np.diag(dist) != 0):
        report.violations.append(
            Violation("diagonal", (names[i],), f"d(x,x) = {dist[i, i]}, expected 0")
        )

    for i, j in np.argwhere(np.triu(dist != dist.T, k=1)):
        report.violations.append(
            Violation(
                "symmetry",
                (names[i], names[j]),
                f"d(x,y) = {dist[i, j]} but d(y,x) = {dist[j, i]}",
            )
        )

    low, high = _VALUE_RANGE.get(space.label, (1, None))
    off_diag = ~np.eye(size, dtype=bool)
    bad_range = off_diag & ((dist < low) | ((dist > high) if high is not None else False))
    for i, j in np.argwhere(np.triu(bad_range | bad_range.T, k=1)):
        report.violations.append(
            Violation(
                "range",
                (names[i], names[j]),
                f"d = {dist[i, j]} outside [{low}, {high}]",
            )
        )

    best, via = _shortcuts(dist)
    broken = dist > best
    # Report each unordered pair once, using whichever orientation fails.
    for i, j in np.argwhere(np.triu(broken | broken.T, k=1)):
        a, b = (i, j) if broken[i, j] else (j, i)
        k = via[a, b]
        report.violations.append(
            Violation(
                "triangle",
                (names[a], names[b], names[k]),
                f"d(x,y) = {dist[a, b]} > d(x,z) + d(z,y) = {dist[a, k]} + {dist[k, b]}",
            )
        )

    if check_oracle and space.label in (SpaceLabel.M, SpaceLabel.N0):
        table = closed_form(space)
        for i, j in np.argwhere(np.triu((dist != table) | (dist != table).T, k=1)):
            report.violations.append(
                Violation(
                    "table",
                    (names[i], names[j]),
                    f"stored {dist[i, j]}, closed form {table[i, j]}",
                )
            )
        oracle = bfs_table(space)
        for i, j in np.argwhere(np.triu((dist != oracle) | (dist != oracle).T, k=1)):
            report.violations.append(
                Violation(
                    "bfs",
                    (names[i], names[j]),
                    f"stored {dist[i, j]}, breadth-first search {oracle[i, j]}",
                )
            )

    return report
