"""Exhaustive and randomized checks around the free space.

- delta is an isometry: ||delta_x - delta_y|| = d(x, y) for every pair.
- F(N_0, rho) is isometrically l1 in the basis (delta_k - delta_0).
- Constants of the canonical bijection M_n -> N_0 (root -> 0, then in order).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from embedlab.common.console import log
from embedlab.common.errors import MembershipError, ValidationError
from embedlab.common.rationals import format_rational
from embedlab.metric.builder import build_n0_truncation, build_truncation
from embedlab.metric.models import SpaceLabel, TruncatedSpace

from .models import Molecule
from .norm import free_norm


@dataclass
class IsometryReport:
    space: str
    pairs_checked: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "pairs_checked": self.pairs_checked,
            "ok": self.ok,
            "violations": self.mismatches,
        }


@dataclass
class L1Report:
    n: int
    molecules_checked: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "molecules_checked": self.molecules_checked,
            "ok": self.ok,
            "violations": self.mismatches,
        }


@dataclass(frozen=True)
class BijectionConstants:
    n: int
    lip_forward: Fraction
    lip_inverse: Fraction

    @property
    def product(self) -> Fraction:
        return self.lip_forward * self.lip_inverse

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lip_forward": format_rational(self.lip_forward),
            "lip_inverse": format_rational(self.lip_inverse),
            "product": format_rational(self.product),
        }


def check_delta_isometry(space: TruncatedSpace) -> IsometryReport:
    report = IsometryReport(space=space.describe())
    points = space.points
    for i, x in enumerate(points):
        for j in range(i + 1, len(points)):
            y = points[j]
            result = free_norm(space, Molecule.dipole(space, x, y))
            report.pairs_checked += 1
            expected = int(space.dist[i, j])
            if result.norm != expected:
                report.mismatches.append(
                    {
                        "x": x.to_string(space.label),
                        "y": y.to_string(space.label),
                        "free_norm": format_rational(result.norm),
                        "distance": expected,
                    }
                )
    log("ISOMETRY", f"{space.describe()}: {report.pairs_checked} pairs, "
        f"{len(report.mismatches)} mismatches")
    return report


def l1_coefficient_norm(molecule: Molecule) -> Fraction:
    return sum((abs(c) for c in molecule.n0_coefficients().values()), Fraction(0))


def check_n0_is_l1(n: int, molecules: Sequence[Molecule]) -> L1Report:
    """Every molecule's free norm must equal the l1 norm of its coefficients."""
    space = build_n0_truncation(n)
    report = L1Report(n=n)
    for index, molecule in enumerate(molecules):
        if molecule.space.label is not SpaceLabel.N0 or molecule.space != space:
            raise MembershipError(f"Molecule {index} is not over the N_0 truncation of level {n}")
        norm = free_norm(space, molecule).norm
        expected = l1_coefficient_norm(molecule)
        report.molecules_checked += 1
        if norm != expected:
            report.mismatches.append(
                {
                    "index": index,
                    "free_norm": format_rational(norm),
                    "l1_norm": format_rational(expected),
                }
            )
    return report


def random_n0_molecules(
    n: int, count: int, seed: int = 0, max_numerator: int = 20, max_denominator: int = 6
) -> list[Molecule]:
    """Molecules sum_k c_k (delta_k - delta_0) with random rational c_k (some zero)."""
    space = build_n0_truncation(n)
    rng = np.random.default_rng(seed)
    molecules = []
    for _ in range(count):
        numerators = rng.integers(-max_numerator, max_numerator + 1, size=n)
        denominators = rng.integers(1, max_denominator + 1, size=n)
        coefficients = {
            k + 1: Fraction(int(p), int(q))
            for k, (p, q) in enumerate(zip(numerators, denominators, strict=True))
        }
        molecules.append(Molecule.from_n0_coefficients(space, coefficients))
    return molecules


def canonical_bijection_constants(n: int) -> BijectionConstants:
    """Lipschitz constants of h: M_n -> (N_0, rho), root -> 0, others -> 1, 2, ...

    rho(h(x), h(y)) is 1 when either point is the root and 2 otherwise, so
    only the (rho, d) value pairs matter.
    """
    if not isinstance(n, int) or n < 2:
        raise ValidationError(f"Bijection constants need n >= 2, got {n}")
    space = build_truncation(n)
    dist = space.dist
    size = len(space)
    rho = np.full((size, size), 2, dtype=np.int64)
    rho[0, :] = rho[:, 0] = 1
    upper = np.triu_indices(size, k=1)
    combos = set(zip(rho[upper].tolist(), dist[upper].tolist(), strict=True))
    forward = max(Fraction(r, d) for r, d in combos)
    inverse = max(Fraction(d, r) for r, d in combos)
    return BijectionConstants(n=n, lip_forward=forward, lip_inverse=inverse)
