"""Generalized-roundness sums for a configuration (a_1..a_n, b_1..b_n).

    lhs = sum_{i<j} d(a_i,a_j)^q + d(b_i,b_j)^q
    rhs = sum_{i,j} d(a_i,b_j)^q

q is a Fraction. Integral q keeps everything exact; otherwise the powers
are binary floats and comparisons use FLOAT_TOLERANCE, scaled by the
cross sum when that exceeds 1.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Sequence
from fractions import Fraction
from itertools import combinations
from typing import Any

from embedlab.common.errors import CertificateError, DimensionError
from embedlab.common.rationals import parse_positive_rational
from embedlab.metric.models import SpaceLabel, TruncatedSpace

from .models import InequalityCheck, RoundnessCertificate

Metric = Callable[[Any, Any], int | Fraction | float]


def _power(value: int | Fraction | float, q: Fraction) -> Fraction | float:
    if q.denominator == 1 and not isinstance(value, float):
        return Fraction(value) ** q.numerator
    return float(value) ** float(q)


def _as_metric(space: TruncatedSpace | Metric) -> Metric:
    if isinstance(space, TruncatedSpace):
        return space.d
    if callable(space):
        return space
    raise TypeError(f"Expected a TruncatedSpace or a metric callable, got {type(space).__name__}")


def roundness_sums(
    space: TruncatedSpace | Metric,
    a_list: Sequence[Hashable],
    b_list: Sequence[Hashable],
    q: Fraction | int | str = 1,
) -> tuple[Fraction | float, Fraction | float]:
    """(lhs, rhs) of the roundness-q inequality."""
    q = parse_positive_rational(q, "q")
    if len(a_list) != len(b_list):
        raise CertificateError(
            f"a_list and b_list must have the same length ({len(a_list)} != {len(b_list)})"
        )
    if len(a_list) < 2:
        raise CertificateError(f"Configurations need n >= 2 points, got {len(a_list)}")
    d = _as_metric(space)
    lhs = sum(
        (_power(d(a_list[i], a_list[j]), q) + _power(d(b_list[i], b_list[j]), q))
        for i, j in combinations(range(len(a_list)), 2)
    )
    rhs = sum(_power(d(a, b), q) for a in a_list for b in b_list)
    return lhs, rhs


def roundness_deficit(
    space: TruncatedSpace | Metric,
    a_list: Sequence[Hashable],
    b_list: Sequence[Hashable],
    q: Fraction | int | str = 1,
) -> Fraction | float:
    """rhs - lhs; nonnegative iff the inequality holds for this configuration."""
    lhs, rhs = roundness_sums(space, a_list, b_list, q)
    return rhs - lhs


def evaluate_certificate(
    space: TruncatedSpace,
    a_list: Sequence,
    b_list: Sequence,
    q: Fraction | int | str = 1,
) -> RoundnessCertificate:
    q = parse_positive_rational(q, "q")
    lhs, rhs = roundness_sums(space, a_list, b_list, q)
    return RoundnessCertificate(
        q=q,
        a_list=tuple(a_list),
        b_list=tuple(b_list),
        lhs=lhs,
        rhs=rhs,
        label=space.label if isinstance(space, TruncatedSpace) else SpaceLabel.M,
    )


def configuration_lower_bound(
    space: TruncatedSpace | Metric,
    a_list: Sequence[Hashable],
    b_list: Sequence[Hashable],
    q: Fraction | int | str = 1,
) -> Fraction | float:
    """Smallest D with lhs <= D^q * rhs.

    Every embedding of the configuration into a space of roundness q has
    distortion at least this value. Exact for q = 1.
    """
    q = parse_positive_rational(q, "q")
    lhs, rhs = roundness_sums(space, a_list, b_list, q)
    if rhs == 0:
        raise CertificateError("Cross sum is zero; the configuration certifies nothing")
    if q == 1 and not isinstance(lhs, float):
        return Fraction(lhs) / Fraction(rhs)
    return (float(lhs) / float(rhs)) ** (1.0 / float(q))


def l1_distance(u: Sequence, v: Sequence) -> Fraction:
    """Sum of absolute coordinate differences, exact for int/Fraction coordinates."""
    if len(u) != len(v):
        raise DimensionError(f"Vectors of dimension {len(u)} and {len(v)} cannot be compared")
    return sum((abs(Fraction(a) - Fraction(b)) for a, b in zip(u, v, strict=True)), Fraction(0))


def check_inequality_on_images(
    vectors: Sequence[Sequence],
    a_indices: Sequence[int],
    b_indices: Sequence[int],
    q: Fraction | int | str = 1,
) -> InequalityCheck:
    """Roundness-1 test of a configuration of vectors under the l1 metric.

    Only q = 1 is supported: that is the exponent L_1 is known to satisfy,
    so a False result here is a bug somewhere upstream.
    """
    q = parse_positive_rational(q, "q")
    if q != 1:
        raise CertificateError(f"Only q = 1 is certified for the l1 metric, got q = {q}")
    dims = {len(v) for v in vectors}
    if len(dims) > 1:
        raise DimensionError(f"All vectors must share one dimension, got {sorted(dims)}")

    def metric(i: int, j: int) -> Fraction:
        return l1_distance(vectors[i], vectors[j])

    deficit = roundness_deficit(metric, list(a_indices), list(b_indices), q)
    return InequalityCheck(holds=deficit >= 0, deficit=deficit)
