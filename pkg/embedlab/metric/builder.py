"""Build truncations M_n and (N_0, rho)_n and serve the closed-form distance of M.

Point order is fixed: root, integers ascending, then sets in ascending
bitmask order over {1..n}.
"""

from __future__ import annotations

import numpy as np

from embedlab.common.config import get_max_n, get_max_n0
from embedlab.common.errors import SizeLimitError, ValidationError

from .models import PointM, SpaceLabel, TruncatedSpace, set_from_mask


def distance(x: PointM, y: PointM) -> int:
    """Shortest-path distance of M, from the closed-form table."""
    if x == y:
        return 0
    if x.is_root or y.is_root:
        other = y if x.is_root else x
        return 1 if other.is_integer else 2
    if x.is_integer and y.is_integer:
        return 2
    if x.is_set and y.is_set:
        return 2 if x.bitmask & y.bitmask else 4
    k, a = (x, y) if x.is_integer else (y, x)
    return 1 if k.value in a.elements else 3


def rho(x: PointM, y: PointM) -> int:
    """Distance of (N_0, rho): 1 between 0 and k, 2 between distinct k, m >= 1."""
    if x == y:
        return 0
    if x.is_set or y.is_set:
        raise ValidationError("(N_0, rho) has no set points")
    return 1 if (x.is_root or y.is_root) else 2


def level_points(n: int) -> list[PointM]:
    """Points of M_n in canonical order."""
    points = [PointM.root()]
    points.extend(PointM.integer(k) for k in range(1, n + 1))
    points.extend(set_from_mask(mask) for mask in range(1, 1 << n))
    return points


def build_truncation(n: int, max_n: int | None = None) -> TruncatedSpace:
    """M_n: root, integers 1..n and every nonempty subset of {1..n} (n + 2^n points)."""
    cap = max_n if max_n is not None else get_max_n()
    if not isinstance(n, int) or n < 1 or n > cap:
        raise SizeLimitError(f"Truncation level must satisfy 1 <= n <= {cap}, got {n}")

    masks = np.arange(1, 1 << n, dtype=np.int64)
    ints = np.arange(1, n + 1, dtype=np.int64)
    size = 1 + n + masks.size
    dist = np.zeros((size, size), dtype=np.int64)

    s_ints = slice(1, n + 1)
    s_sets = slice(n + 1, size)

    dist[0, s_ints] = dist[s_ints, 0] = 1
    dist[0, s_sets] = dist[s_sets, 0] = 2

    int_block = np.full((n, n), 2, dtype=np.int64)
    np.fill_diagonal(int_block, 0)
    dist[s_ints, s_ints] = int_block

    contains = (masks[None, :] >> (ints[:, None] - 1)) & 1
    int_set = np.where(contains == 1, 1, 3)
    dist[s_ints, s_sets] = int_set
    dist[s_sets, s_ints] = int_set.T

    overlap = (masks[:, None] & masks[None, :]) != 0
    set_block = np.where(overlap, 2, 4)
    np.fill_diagonal(set_block, 0)
    dist[s_sets, s_sets] = set_block

    return TruncatedSpace(n=n, points=tuple(level_points(n)), dist=dist, label=SpaceLabel.M)


def build_n0_truncation(n: int, max_n: int | None = None) -> TruncatedSpace:
    """(N_0, rho) on {0, 1, ..., n}; the root stands for 0."""
    cap = max_n if max_n is not None else get_max_n0()
    if not isinstance(n, int) or n < 0 or n > cap:
        raise SizeLimitError(f"N_0 truncation level must satisfy 0 <= n <= {cap}, got {n}")
    size = n + 1
    dist = np.full((size, size), 2, dtype=np.int64)
    dist[0, :] = dist[:, 0] = 1
    np.fill_diagonal(dist, 0)
    points = [PointM.root()] + [PointM.integer(k) for k in range(1, n + 1)]
    return TruncatedSpace(n=n, points=tuple(points), dist=dist, label=SpaceLabel.N0)


def build_space(label: SpaceLabel | str, n: int, max_n: int | None = None) -> TruncatedSpace:
    label = SpaceLabel(label)
    if label is SpaceLabel.M:
        return build_truncation(n, max_n=max_n)
    return build_n0_truncation(n)


def closed_form(space: TruncatedSpace) -> np.ndarray:
    """Distance table recomputed point by point from the closed form of its label."""
    metric = distance if space.label is SpaceLabel.M else rho
    pts = space.points
    return np.array([[metric(x, y) for y in pts] for x in pts], dtype=np.int64)
