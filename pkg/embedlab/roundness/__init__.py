"""Generalized-roundness inequalities and the distortion bounds they certify."""

from .bounds import distortion_lower_bound, lower_bound_table, threshold_level
from .certificate import paper_certificate
from .deficit import (
    check_inequality_on_images,
    configuration_lower_bound,
    evaluate_certificate,
    l1_distance,
    roundness_deficit,
    roundness_sums,
)
from .models import FLOAT_TOLERANCE, InequalityCheck, LowerBoundRecord, RoundnessCertificate

__all__ = [
    "FLOAT_TOLERANCE",
    "InequalityCheck",
    "LowerBoundRecord",
    "RoundnessCertificate",
    "check_inequality_on_images",
    "configuration_lower_bound",
    "distortion_lower_bound",
    "evaluate_certificate",
    "l1_distance",
    "lower_bound_table",
    "paper_certificate",
    "roundness_deficit",
    "roundness_sums",
    "threshold_level",
]
