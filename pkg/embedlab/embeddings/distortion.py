"""Bi-Lipschitz constants and distortion of an embedding.

C1 = min ||f(x) - f(y)|| / d(x,y), C2 = max of the same ratio over distinct
pairs, distortion = C2 / C1 (infinite when two points collapse).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from embedlab.common.errors import ValidationError
from embedlab.common.rationals import format_number

from .models import EmbeddingMap

# Relative tolerance for float comparisons of distortion values.
REL_TOL = 1e-9


@dataclass(frozen=True)
class DistortionResult:
    c1: Fraction | float
    c2: Fraction | float
    dist: Fraction | float

    @property
    def collapsed(self) -> bool:
        return self.dist == float("inf")

    def to_dict(self) -> dict:
        return {
            "C1": format_number(self.c1),
            "C2": format_number(self.c2),
            "dist": format_number(self.dist),
        }


def pair_indices(size: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(size, k=1)


def image_distances(f: EmbeddingMap, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Vectorized norms ||f(x_i) - f(x_j)|| for the given index pairs."""
    diffs = f.vectors[rows] - f.vectors[cols]
    return f.target.rowwise(diffs)


def _exact_distortion(f: EmbeddingMap) -> DistortionResult:
    """Exact path for integer or Fraction images under l1 / linf."""
    rows, cols = pair_indices(len(f.space))
    dist = f.space.dist[rows, cols]
    if np.issubdtype(f.vectors.dtype, np.integer):
        img = image_distances(f, rows, cols)
        combos = set(zip(img.tolist(), dist.tolist(), strict=True))
    else:
        combos = set()
        for i, j, d in zip(rows.tolist(), cols.tolist(), dist.tolist(), strict=True):
            diff = [Fraction(a) - Fraction(b) for a, b in zip(f.vectors[i], f.vectors[j], strict=True)]
            combos.add((f.target.exact(diff), d))
    ratios = [Fraction(i) / d for i, d in combos]
    c1, c2 = min(ratios), max(ratios)
    if c1 == 0:
        return DistortionResult(c1=c1, c2=c2, dist=float("inf"))
    return DistortionResult(c1=c1, c2=c2, dist=c2 / c1)


def distortion(f: EmbeddingMap) -> DistortionResult:
    if len(f.space) < 2:
        raise ValidationError("Distortion needs a space with at least 2 points")
    if f.is_exact:
        return _exact_distortion(f)
    rows, cols = pair_indices(len(f.space))
    ratios = image_distances(f, rows, cols) / f.space.dist[rows, cols]
    c1, c2 = float(ratios.min()), float(ratios.max())
    if c1 == 0.0:
        return DistortionResult(c1=c1, c2=c2, dist=float("inf"))
    return DistortionResult(c1=c1, c2=c2, dist=max(c2 / c1, 1.0))


def normalize(f: EmbeddingMap) -> EmbeddingMap:
    """Translate so f(root) = 0 and rescale so C1 = 1."""
    rooted = f.rooted()
    c1 = distortion(rooted).c1
    if c1 == 0:
        raise ValidationError("Cannot normalize an embedding that collapses two points")
    if rooted.is_exact and isinstance(c1, Fraction):
        vectors = rooted.vectors.astype(object) / c1
        return EmbeddingMap(rooted.space, rooted.target, vectors)
    return EmbeddingMap(rooted.space, rooted.target, rooted.vectors.astype(float) / float(c1))


def same_distortion(a: float | Fraction, b: float | Fraction) -> bool:
    return bool(np.isclose(float(a), float(b), rtol=REL_TOL, atol=0.0))

