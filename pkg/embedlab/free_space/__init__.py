"""Lipschitz-free norms over finite spaces, computed exactly by min-cost flow."""

from .checks import (
    BijectionConstants,
    IsometryReport,
    L1Report,
    canonical_bijection_constants,
    check_delta_isometry,
    check_n0_is_l1,
    l1_coefficient_norm,
    random_n0_molecules,
)
from .flow import TransportSolution, min_cost_transport
from .models import Arc, FlowCertificate, LipschitzWitness, Molecule
from .norm import FreeNorm, free_norm

__all__ = [
    "Arc",
    "BijectionConstants",
    "FlowCertificate",
    "FreeNorm",
    "IsometryReport",
    "L1Report",
    "LipschitzWitness",
    "Molecule",
    "TransportSolution",
    "canonical_bijection_constants",
    "check_delta_isometry",
    "check_n0_is_l1",
    "free_norm",
    "l1_coefficient_norm",
    "min_cost_transport",
    "random_n0_molecules",
]
