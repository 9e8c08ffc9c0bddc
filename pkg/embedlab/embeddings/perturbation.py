"""Bi-Lipschitz constants after moving every image point by at most eta.

If ||f(x) - g(x)|| <= eta for all x and C1 d <= ||g(x) - g(y)|| <= C2 d, then

    ||g(x) - g(y)|| - 2 eta <= ||f(x) - f(y)|| <= ||g(x) - g(y)|| + 2 eta

and with d(x, y) >= min_distance the constants become C1 - 2 eta / min_distance
and C2 + 2 eta / min_distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from embedlab.common.errors import PerturbationTooLargeError, ValidationError
from embedlab.common.rationals import format_number, parse_rational

Number = Fraction | float | int

_MAX_HALVINGS = 200


def _coerce(value: Number | str) -> Fraction | float:
    if isinstance(value, float):
        return value
    return parse_rational(value)


def perturbation_bound(
    c1: Number | str,
    c2: Number | str,
    eta: Number | str,
    min_distance: Number | str = 1,
) -> tuple[Fraction | float, Fraction | float]:
    """(C1', C2'); exact when every input is rational."""
    c1, c2, eta, min_distance = (_coerce(v) for v in (c1, c2, eta, min_distance))
    if c1 <= 0:
        raise ValidationError(f"C1 must be positive, got {c1}")
    if c2 < c1:
        raise ValidationError(f"C2 must be >= C1, got C1={c1}, C2={c2}")
    if eta < 0:
        raise ValidationError(f"eta must be >= 0, got {eta}")
    if min_distance <= 0:
        raise ValidationError(f"min_distance must be positive, got {min_distance}")
    shift = 2 * eta / min_distance
    new_c1 = c1 - shift
    if new_c1 <= 0:
        raise PerturbationTooLargeError(
            f"Perturbation eta={format_number(eta)} destroys the lower constant "
            f"(C1' = {format_number(new_c1)})"
        )
    return new_c1, c2 + shift


@dataclass(frozen=True)
class EpsilonChoice:
    """epsilon, D' = D(1 + epsilon), eta = 2 epsilon D' and the resulting constants."""

    D: Fraction | float
    epsilon: Fraction | float
    d_prime: Fraction | float
    eta: Fraction | float
    c1: Fraction | float
    c2: Fraction | float

    @property
    def distortion(self) -> Fraction | float:
        return self.c2 / self.c1

    def to_dict(self) -> dict:
        return {
            "D": format_number(self.D),
            "epsilon": format_number(self.epsilon),
            "D_prime": format_number(self.d_prime),
            "eta": format_number(self.eta),
            "C1": format_number(self.c1),
            "C2": format_number(self.c2),
            "distortion": format_number(self.distortion),
        }


def admissible_epsilon(D: Number | str) -> EpsilonChoice:
    """Largest epsilon = 2^-m (m >= 1) keeping the perturbed distortion below 2.

    Needs D(1 + eps) < 2 and D'(1 + 4 eps) / (1 - 2 eta) < 2 with eta = 2 eps D'.
    """
    D = _coerce(D)
    if D < 1 or D >= 2:
        raise ValidationError(f"D must satisfy 1 <= D < 2, got {D}")
    one = Fraction(1) if isinstance(D, Fraction) else 1.0
    epsilon = one / 2
    for _ in range(_MAX_HALVINGS):
        d_prime = D * (1 + epsilon)
        eta = 2 * epsilon * d_prime
        if d_prime < 2 and 1 - 2 * eta > 0:
            c1, c2 = perturbation_bound(one, d_prime, eta)
            if c2 / c1 < 2:
                return EpsilonChoice(D=D, epsilon=epsilon, d_prime=d_prime, eta=eta, c1=c1, c2=c2)
        epsilon = epsilon / 2
    raise ValidationError(f"No admissible epsilon found for D = {D}")
