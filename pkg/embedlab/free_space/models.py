"""Molecules over a finite space and the primal/dual certificates of their free norm."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from embedlab.common.errors import MoleculeError, ValidationError
from embedlab.common.rationals import format_rational, parse_rational
from embedlab.metric.models import PointM, SpaceLabel, TruncatedSpace, parse_point


@dataclass(frozen=True, eq=False)
class Molecule:
    """Finitely supported zero-sum rational function on the points of ``space``.

    Zero weights are dropped on construction; the empty molecule is the zero vector.
    """

    space: TruncatedSpace
    weights: Mapping[PointM, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: dict[PointM, Fraction] = {}
        for point, weight in self.weights.items():
            self.space.index_of(point)
            w = parse_rational(weight)
            if w:
                cleaned[point] = cleaned.get(point, Fraction(0)) + w
        total = sum(cleaned.values(), Fraction(0))
        if total != 0:
            raise MoleculeError(f"Molecule weights must sum to 0, got {format_rational(total)}")
        # Canonical order: the space's point order.
        ordered = dict(sorted(cleaned.items(), key=lambda kv: self.space.index_of(kv[0])))
        object.__setattr__(self, "weights", ordered)

    @classmethod
    def zero(cls, space: TruncatedSpace) -> Molecule:
        return cls(space, {})

    @classmethod
    def dipole(cls, space: TruncatedSpace, x: PointM, y: PointM) -> Molecule:
        """delta_x - delta_y."""
        if x == y:
            return cls.zero(space)
        return cls(space, {x: Fraction(1), y: Fraction(-1)})

    @classmethod
    def from_n0_coefficients(
        cls, space: TruncatedSpace, coefficients: Mapping[int, Fraction | int | str]
    ) -> Molecule:
        """sum_k c_k (delta_k - delta_0) over an (N_0, rho) truncation."""
        if space.label is not SpaceLabel.N0:
            raise ValidationError(f"Expected an N_0 truncation, got {space.describe()}")
        weights: dict[PointM, Fraction] = {}
        balance = Fraction(0)
        for k, c in coefficients.items():
            c = parse_rational(c)
            if k < 1:
                raise ValidationError(f"Basis index must be >= 1, got {k}")
            weights[PointM.integer(k)] = c
            balance += c
        weights[PointM.root()] = -balance
        return cls(space, weights)

    @classmethod
    def from_document(cls, space: TruncatedSpace, doc: Mapping) -> Molecule:
        """Parse {"weights": {"<point>": "p/q", ...}}."""
        raw = doc.get("weights") if isinstance(doc, Mapping) else None
        if not isinstance(raw, Mapping):
            raise ValidationError('Molecule document needs a "weights" object')
        return cls(space, {parse_point(k): parse_rational(v) for k, v in raw.items()})

    @property
    def support(self) -> list[PointM]:
        return list(self.weights)

    @property
    def is_zero(self) -> bool:
        return not self.weights

    def weight(self, point: PointM) -> Fraction:
        return self.weights.get(point, Fraction(0))

    def n0_coefficients(self) -> dict[int, Fraction]:
        """Coefficients in the basis (delta_k - delta_0); the weight at k itself."""
        return {p.value: w for p, w in self.weights.items() if p.is_integer}

    def _check_same_space(self, other: Molecule) -> None:
        if other.space != self.space:
            raise ValidationError("Molecules live over different spaces")

    def __add__(self, other: Molecule) -> Molecule:
        self._check_same_space(other)
        merged = dict(self.weights)
        for point, w in other.weights.items():
            merged[point] = merged.get(point, Fraction(0)) + w
        return Molecule(self.space, merged)

    def __neg__(self) -> Molecule:
        return self.scale(-1)

    def __sub__(self, other: Molecule) -> Molecule:
        return self + (-other)

    def scale(self, c: Fraction | int | str) -> Molecule:
        c = parse_rational(c)
        return Molecule(self.space, {p: c * w for p, w in self.weights.items()})

    def __mul__(self, c: Fraction | int) -> Molecule:
        return self.scale(c)

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        label = self.space.label
        return {"weights": {p.to_string(label): format_rational(w) for p, w in self.weights.items()}}


@dataclass(frozen=True)
class Arc:
    source: PointM
    target: PointM
    mass: Fraction


@dataclass(frozen=True)
class FlowCertificate:
    """Transport plan: mass leaves positive weights and arrives at negative ones."""

    arcs: tuple[Arc, ...]
    cost: Fraction

    def divergence(self) -> dict[PointM, Fraction]:
        net: dict[PointM, Fraction] = {}
        for arc in self.arcs:
            net[arc.source] = net.get(arc.source, Fraction(0)) + arc.mass
            net[arc.target] = net.get(arc.target, Fraction(0)) - arc.mass
        return {p: v for p, v in net.items() if v}

    def is_feasible_for(self, molecule: Molecule) -> bool:
        return self.divergence() == dict(molecule.weights)

    def recomputed_cost(self, space: TruncatedSpace) -> Fraction:
        return sum((arc.mass * space.d(arc.source, arc.target) for arc in self.arcs), Fraction(0))

    def to_dict(self, label: SpaceLabel = SpaceLabel.M) -> dict:
        return {
            "plan": [
                {
                    "source": arc.source.to_string(label),
                    "target": arc.target.to_string(label),
                    "mass": format_rational(arc.mass),
                }
                for arc in self.arcs
            ],
            "cost": format_rational(self.cost),
        }


@dataclass(frozen=True)
class LipschitzWitness:
    """1-Lipschitz function on the support; its pairing bounds the free norm from below."""

    values: Mapping[PointM, Fraction]

    def pairing(self, molecule: Molecule) -> Fraction:
        return sum(
            (w * self.values[p] for p, w in molecule.weights.items()),
            Fraction(0),
        )

    def lipschitz_constant(self, space: TruncatedSpace) -> Fraction:
        """max |u(x) - u(y)| / d(x,y) over distinct points of the witness."""
        pts = list(self.values)
        best = Fraction(0)
        for i, x in enumerate(pts):
            for y in pts[i + 1 :]:
                ratio = abs(self.values[x] - self.values[y]) / space.d(x, y)
                best = max(best, ratio)
        return best

    def is_one_lipschitz(self, space: TruncatedSpace) -> bool:
        return self.lipschitz_constant(space) <= 1

    def extended(self, space: TruncatedSpace) -> LipschitzWitness:
        """McShane extension to every point of ``space``: min_s u(s) + d(x, s)."""
        if not self.values:
            return LipschitzWitness({p: Fraction(0) for p in space.points})
        return LipschitzWitness(
            {
                x: min(u + space.d(x, s) for s, u in self.values.items())
                for x in space.points
            }
        )

    def to_dict(self, label: SpaceLabel = SpaceLabel.M) -> dict:
        return {p.to_string(label): format_rational(v) for p, v in self.values.items()}
