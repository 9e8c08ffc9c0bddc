"""Heuristic search for low-distortion embeddings.

Multi-restart normalized subgradient descent on log C2 - log C1 over all
pairs, with step size step0 / sqrt(t). Each restart draws from its own
child of ``numpy.random.SeedSequence(seed)``, so results do not depend on
how restarts are scheduled. Ties are broken by restart index.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from embedlab.common.console import log
from embedlab.common.errors import ValidationError
from embedlab.common.rationals import format_number
from embedlab.metric.models import SpaceLabel, TruncatedSpace
from embedlab.roundness.bounds import distortion_lower_bound

from .baselines import baseline_vectors
from .distortion import REL_TOL, distortion, normalize, pair_indices
from .models import EmbeddingMap, NormTag

DEFAULT_STEP = 0.1

# Targets with generalized roundness 1, where the certificate bound applies.
ROUNDNESS_ONE_TARGETS = frozenset([NormTag.L1, NormTag.L2])


@dataclass(frozen=True)
class SearchResult:
    embedding: EmbeddingMap
    dist: float
    restart: int
    certified_lower_bound: Fraction | None

    def to_dict(self) -> dict:
        doc = self.embedding.to_dict()
        doc["best_dist"] = format_number(float(self.dist))
        doc["restart"] = self.restart
        doc["certified_lower_bound"] = (
            None if self.certified_lower_bound is None else format_number(self.certified_lower_bound)
        )
        return doc


def certified_lower_bound(space: TruncatedSpace, target: NormTag) -> Fraction | None:
    """Roundness-1 bound 2(n-1)/(n+2) for M_n, n >= 3, into l1 or l2; else None."""
    if target not in ROUNDNESS_ONE_TARGETS or space.label is not SpaceLabel.M or space.n < 3:
        return None
    return distortion_lower_bound(space.n, 1).bound


def _subgradient(target: NormTag, diff: np.ndarray) -> np.ndarray:
    """A subgradient of the norm at ``diff``."""
    if target is NormTag.L1:
        return np.sign(diff)
    if target is NormTag.L2:
        return diff / np.linalg.norm(diff)
    g = np.zeros_like(diff)
    m = int(np.argmax(np.abs(diff)))
    g[m] = np.sign(diff[m])
    return g


def _run_restart(
    index: int,
    seed_seq: np.random.SeedSequence,
    space: TruncatedSpace,
    target: NormTag,
    k: int,
    iterations: int,
    step0: float,
    start: np.ndarray | None,
) -> tuple[float, int, np.ndarray]:
    rng = np.random.default_rng(seed_seq)
    rows, cols = pair_indices(len(space))
    d = space.dist[rows, cols].astype(float)
    diameter = float(d.max())
    if start is not None:
        x = start.astype(float).copy()
    else:
        x = rng.standard_normal((len(space), k)) * diameter

    best_dist = math.inf
    best_x = x.copy()
    for t in range(1, iterations + 1):
        diffs = x[rows] - x[cols]
        ratios = target.rowwise(diffs) / d
        lo, hi = int(np.argmin(ratios)), int(np.argmax(ratios))
        c1, c2 = ratios[lo], ratios[hi]
        if c1 <= 0.0:
            x = x + rng.standard_normal(x.shape) * 1e-6 * diameter
            continue
        x = x / c1
        current = c2 / c1
        if current < best_dist:
            best_dist, best_x = current, x.copy()

        grad = np.zeros_like(x)
        g_hi = _subgradient(target, diffs[hi] / c1) / (ratios[hi] / c1 * d[hi])
        g_lo = _subgradient(target, diffs[lo] / c1) / d[lo]
        grad[rows[hi]] += g_hi
        grad[cols[hi]] -= g_hi
        grad[rows[lo]] -= g_lo
        grad[cols[lo]] += g_lo
        norm = np.linalg.norm(grad)
        if norm == 0.0:
            break
        x = x - (step0 / math.sqrt(t)) * grad / norm

    log("SEARCH", f"restart {index}: best distortion {best_dist:.6f}")
    return best_dist, index, best_x


def search_min_distortion(
    space: TruncatedSpace,
    target: NormTag | str,
    k: int,
    restarts: int = 10,
    iterations: int = 500,
    seed: int = 0,
    workers: int = 1,
    step: float = DEFAULT_STEP,
    use_baseline: bool = True,
) -> SearchResult:
    """Best embedding found within restarts x iterations; deterministic given seed.

    With ``use_baseline`` and k >= |points|, restart 0 starts from the
    Frechet (linf) or simplex (l1, l2) embedding, so the search never loses
    to those references. The returned map is normalized (f(root) = 0, C1 = 1).
    """
    target = NormTag.parse(target)
    if k < 1:
        raise ValidationError(f"Target dimension must be >= 1, got {k}")
    if restarts < 1 or iterations < 1:
        raise ValidationError("Budget needs at least one restart and one iteration")
    if len(space) < 2:
        raise ValidationError("Search needs a space with at least 2 points")

    children = np.random.SeedSequence(seed).spawn(restarts)
    baseline = baseline_vectors(space, target, k) if use_baseline else None
    jobs = [
        (i, children[i], space, target, k, iterations, step, baseline if i == 0 else None)
        for i in range(restarts)
    ]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda job: _run_restart(*job), jobs))
    else:
        outcomes = [_run_restart(*job) for job in jobs]

    finite = [o for o in outcomes if math.isfinite(o[0])]
    if not finite:
        raise ValidationError("Every restart collapsed the space; try a larger dimension")
    _, best_index, best_x = min(finite, key=lambda o: (o[0], o[1]))

    embedding = normalize(EmbeddingMap(space, target, best_x))
    reported = float(distortion(embedding).dist)

    bound = certified_lower_bound(space, target)
    if bound is not None and reported < float(bound) * (1 - REL_TOL):
        raise RuntimeError(
            f"Search reported distortion {reported} below the certified bound {bound}"
        )
    log("SEARCH", f"{space.describe()} -> {target.value}^{k}: {reported:.6f} (restart {best_index})")
    return SearchResult(
        embedding=embedding,
        dist=reported,
        restart=best_index,
        certified_lower_bound=bound,
    )
