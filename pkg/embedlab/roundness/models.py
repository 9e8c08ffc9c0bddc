"""Records produced by the roundness package."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from embedlab.common.rationals import format_number, format_rational
from embedlab.metric.models import PointM, SpaceLabel

# Slack for float deficits (non-integral q).
FLOAT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RoundnessCertificate:
    """A configuration (a_1..a_n, b_1..b_n) evaluated at exponent q.

    ``deficit`` is rhs - lhs: nonnegative iff the roundness-q inequality holds.
    Exact when q is an integer, float otherwise.
    """

    q: Fraction
    a_list: tuple[PointM, ...]
    b_list: tuple[PointM, ...]
    lhs: Fraction | float
    rhs: Fraction | float
    label: SpaceLabel = SpaceLabel.M

    @property
    def n(self) -> int:
        return len(self.a_list)

    @property
    def deficit(self) -> Fraction | float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        deficit = self.deficit
        if isinstance(deficit, float):
            return deficit >= -FLOAT_TOLERANCE * max(1.0, abs(float(self.rhs)))
        return deficit >= 0

    def to_dict(self) -> dict:
        return {
            "q": format_rational(self.q),
            "a_list": [p.to_string(self.label) for p in self.a_list],
            "b_list": [p.to_string(self.label) for p in self.b_list],
            "lhs": format_number(self.lhs),
            "rhs": format_number(self.rhs),
            "deficit": format_number(self.deficit),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class LowerBoundRecord:
    """Distortion lower bound 2 / (1 + 3^q/(n-1))^(1/q) from the n-point certificate."""

    n: int
    q: Fraction
    bound: Fraction | float

    @property
    def is_exact(self) -> bool:
        return isinstance(self.bound, Fraction)

    def to_dict(self) -> dict:
        row = {
            "n": self.n,
            "q": format_rational(self.q),
            "float": format_number(float(self.bound)),
        }
        if self.is_exact:
            row["lower_bound_num"] = self.bound.numerator
            row["lower_bound_den"] = self.bound.denominator
        else:
            row["lower_bound_num"] = None
            row["lower_bound_den"] = None
        return row


class InequalityCheck(NamedTuple):
    holds: bool
    deficit: Fraction
