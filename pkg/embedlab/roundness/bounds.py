"""Distortion lower bounds certified by the n-point configuration.

From n(n-1) 2^q <= D^q n((n-1) + 3^q):

    D >= 2 / (1 + 3^q / (n-1))^(1/q)

which is 2(n-1)/(n+2) at q = 1 and tends to 2 as n grows.
"""

from __future__ import annotations

import math
from fractions import Fraction

from embedlab.common.errors import ValidationError
from embedlab.common.rationals import parse_positive_rational, parse_rational

from .models import LowerBoundRecord


def _check_level(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise ValidationError(f"The certificate needs n >= 3, got {n}")


def bound_value(n: int, q: Fraction) -> Fraction | float:
    if q == 1:
        return Fraction(2 * (n - 1), n + 2)
    qf = float(q)
    return 2.0 / (1.0 + 3.0**qf / (n - 1)) ** (1.0 / qf)


def distortion_lower_bound(n: int, q: Fraction | int | str = 1) -> LowerBoundRecord:
    _check_level(n)
    q = parse_positive_rational(q, "q")
    return LowerBoundRecord(n=n, q=q, bound=bound_value(n, q))


def lower_bound_table(
    n_from: int, n_to: int, q: Fraction | int | str = 1
) -> list[LowerBoundRecord]:
    _check_level(n_from)
    if n_to < n_from:
        raise ValidationError(f"Empty range: n_from={n_from} > n_to={n_to}")
    q = parse_positive_rational(q, "q")
    return [LowerBoundRecord(n=n, q=q, bound=bound_value(n, q)) for n in range(n_from, n_to + 1)]


def threshold_level(target: Fraction | int | str, q: Fraction | int | str = 1) -> int:
    """Smallest n >= 3 whose certified bound strictly exceeds ``target`` (< 2).

    Exact at q = 1: 2(n-1)/(n+2) > t  iff  n > (2 + 2t)/(2 - t).
    """
    t = parse_rational(target)
    q = parse_positive_rational(q, "q")
    if t >= 2:
        raise ValidationError(f"No finite n certifies a bound >= 2 (target {t})")
    if q == 1:
        n = math.floor((2 + 2 * t) / (2 - t)) + 1
        return max(n, 3)

    # Bound is increasing in n: double, then bisect.
    goal = float(t)
    if bound_value(3, q) > goal:
        return 3
    low, high = 3, 6
    while bound_value(high, q) <= goal:
        low, high = high, high * 2
        if high > 1 << 62:
            raise ValidationError(f"Target {t} is beyond float resolution at q = {q}")
    while high - low > 1:
        mid = (low + high) // 2
        if bound_value(mid, q) > goal:
            high = mid
        else:
            low = mid
    return high
