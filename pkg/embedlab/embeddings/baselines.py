"""Two explicit embeddings used as references for the search.

frechet_embedding: x -> (d(x, z))_z into linf, an isometry of any finite space.
simplex_embedding: x -> 2 e_x into l1, all image distances 4, so distortion
diam/min = 4 on M_n (n >= 2).
"""

from __future__ import annotations

import numpy as np

from embedlab.metric.models import TruncatedSpace

from .models import EmbeddingMap, NormTag


def frechet_embedding(space: TruncatedSpace) -> EmbeddingMap:
    return EmbeddingMap(space, NormTag.LINF, np.array(space.dist, dtype=np.int64))


def simplex_embedding(space: TruncatedSpace) -> EmbeddingMap:
    return EmbeddingMap(space, NormTag.L1, 2 * np.eye(len(space), dtype=np.int64))


def baseline_vectors(space: TruncatedSpace, target: NormTag, k: int) -> np.ndarray | None:
    """Float start point for a search with ``k`` coordinates, zero-padded.

    Frechet for linf, the simplex for l1 and l2; None when k < |points|.
    """
    size = len(space)
    if k < size:
        return None
    base = frechet_embedding(space) if target is NormTag.LINF else simplex_embedding(space)
    padded = np.zeros((size, k), dtype=float)
    padded[:, :size] = base.vectors
    return padded
