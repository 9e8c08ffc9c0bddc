"""Embeddings into finite-dimensional normed targets: distortion, search, witnesses."""

from .baselines import baseline_vectors, frechet_embedding, simplex_embedding
from .distortion import DistortionResult, distortion, normalize, same_distortion
from .models import EmbeddingMap, NormTag, WitnessEntry, WitnessReport
from .perturbation import EpsilonChoice, admissible_epsilon, perturbation_bound
from .search import SearchResult, certified_lower_bound, search_min_distortion
from .witness import (
    alternating_witnesses,
    disjoint_pairs,
    expansion_constant,
    extract_witness,
    witness_report,
)

__all__ = [
    "DistortionResult",
    "EmbeddingMap",
    "EpsilonChoice",
    "NormTag",
    "SearchResult",
    "WitnessEntry",
    "WitnessReport",
    "admissible_epsilon",
    "alternating_witnesses",
    "baseline_vectors",
    "certified_lower_bound",
    "disjoint_pairs",
    "distortion",
    "expansion_constant",
    "extract_witness",
    "frechet_embedding",
    "normalize",
    "perturbation_bound",
    "same_distortion",
    "search_min_distortion",
    "simplex_embedding",
    "witness_report",
]
