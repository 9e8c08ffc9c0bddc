"""Embeddings of a truncated space into (R^k, norm) and witness records."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from embedlab.common.errors import DimensionError, ValidationError
from embedlab.common.rationals import format_number
from embedlab.metric.models import PointM, TruncatedSpace, parse_point


class NormTag(Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, raw: str | NormTag) -> NormTag:
        if isinstance(raw, NormTag):
            return raw
        try:
            return cls(str(raw).strip().lower())
        except ValueError:
            raise ValidationError(f"Unknown target norm {raw!r} (use l1, l2 or linf)") from None

    def rowwise(self, diffs: np.ndarray) -> np.ndarray:
        """Norm of each row of a float or integer array."""
        if self is NormTag.L1:
            return np.abs(diffs).sum(axis=-1)
        if self is NormTag.LINF:
            return np.abs(diffs).max(axis=-1)
        return np.sqrt((diffs.astype(float) ** 2).sum(axis=-1))

    def exact(self, diff: Sequence[Fraction]) -> Fraction:
        """Exact norm of a rational vector (l1 and linf only)."""
        if self is NormTag.L1:
            return sum((abs(x) for x in diff), Fraction(0))
        if self is NormTag.LINF:
            return max((abs(x) for x in diff), default=Fraction(0))
        raise ValidationError("The l2 norm of a rational vector is not rational in general")


def _is_exact_dtype(array: np.ndarray) -> bool:
    return array.dtype == object or np.issubdtype(array.dtype, np.integer)


@dataclass(frozen=True, eq=False)
class EmbeddingMap:
    """Row i of ``vectors`` is the image of ``space.points[i]``.

    Integer or Fraction (object) arrays are treated exactly; float arrays
    are evaluated in floating point.
    """

    space: TruncatedSpace
    target: NormTag
    vectors: np.ndarray

    def __post_init__(self):
        array = np.asarray(self.vectors)
        if array.ndim != 2:
            raise DimensionError(f"Vectors must form a 2-D array, got shape {array.shape}")
        if array.shape[0] != len(self.space):
            raise DimensionError(
                f"{array.shape[0]} image vectors for {len(self.space)} points"
            )
        if array.shape[1] < 1:
            raise DimensionError("Target dimension must be >= 1")
        array = array.copy()
        array.setflags(write=False)
        object.__setattr__(self, "vectors", array)
        object.__setattr__(self, "target", NormTag.parse(self.target))

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    @property
    def is_exact(self) -> bool:
        return _is_exact_dtype(self.vectors) and self.target is not NormTag.L2

    def image(self, point: PointM) -> np.ndarray:
        return self.vectors[self.space.index_of(point)]

    def scaled(self, factor: float | Fraction | int) -> EmbeddingMap:
        return EmbeddingMap(self.space, self.target, self.vectors * factor)

    def translated(self, offset: np.ndarray | Sequence) -> EmbeddingMap:
        return EmbeddingMap(self.space, self.target, self.vectors + np.asarray(offset))

    def rooted(self) -> EmbeddingMap:
        """Translate so the root maps to 0 (identity when the space has no root)."""
        root = PointM.root()
        if root not in self.space:
            return self
        return self.translated(-self.image(root))

    def to_dict(self) -> dict:
        label = self.space.label
        if self.vectors.dtype == object:
            rows = [[format_number(Fraction(x)) for x in row] for row in self.vectors]
        elif np.issubdtype(self.vectors.dtype, np.integer):
            rows = self.vectors.tolist()
        else:
            rows = [[float(x) for x in row] for row in self.vectors]
        return {
            "target": self.target.value,
            "dim": self.dimension,
            "space": {"label": label.value, "n": self.space.n},
            "vectors": {
                p.to_string(label): row for p, row in zip(self.space.points, rows, strict=True)
            },
        }

    @classmethod
    def from_document(cls, space: TruncatedSpace, doc: Mapping) -> EmbeddingMap:
        """Inverse of :meth:`to_dict` (float coordinates)."""
        try:
            target = NormTag.parse(doc["target"])
            raw = doc["vectors"]
        except (KeyError, TypeError):
            raise ValidationError('Embedding document needs "target" and "vectors"') from None
        if not isinstance(raw, Mapping):
            raise ValidationError('Embedding "vectors" must map point names to coordinate lists')
        rows: list[list[float] | None] = [None] * len(space)
        for key, row in raw.items():
            if not isinstance(row, list):
                raise ValidationError(f"Image of {key} must be a list of coordinates")
            try:
                coords = [float(Fraction(str(x))) for x in row]
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"Image of {key} has a non-numeric coordinate") from None
            rows[space.index_of(parse_point(key))] = coords
        missing = [space.points[i].to_string(space.label) for i, r in enumerate(rows) if r is None]
        if missing:
            raise DimensionError(f"Embedding document has no image for {missing[:5]}")
        if len({len(r) for r in rows}) > 1:
            raise DimensionError("Every image in an embedding document needs the same dimension")
        return cls(space, target, np.array(rows, dtype=float))



@dataclass(frozen=True)
class WitnessEntry:
    """Separating coordinate for one disjoint pair (A, B) of index sets.

    ``separation`` = min over a in A, b in B of sign * (f(a)_j - f(b)_j).
    """

    a_set: tuple[int, ...]
    b_set: tuple[int, ...]
    eta: float | Fraction
    feasible: bool
    coordinate: int | None = None
    sign: int | None = None
    separation: float | Fraction | None = None
    set_gap: float | Fraction | None = None

    @property
    def meets_eta(self) -> bool:
        return self.feasible and self.separation >= self.eta

    def to_dict(self) -> dict:
        return {
            "A": list(self.a_set),
            "B": list(self.b_set),
            "eta": format_number(self.eta),
            "feasible": self.feasible,
            "coordinate": self.coordinate,
            "sign": self.sign,
            "separation": None if self.separation is None else format_number(self.separation),
            "set_gap": None if self.set_gap is None else format_number(self.set_gap),
            "meets_eta": self.meets_eta,
        }


@dataclass
class WitnessReport:
    expansion: float | Fraction
    entries: list[WitnessEntry] = field(default_factory=list)

    @property
    def eta(self) -> float | Fraction:
        return 4 - 2 * self.expansion

    @property
    def infeasible(self) -> list[WitnessEntry]:
        return [e for e in self.entries if not e.feasible]

    @property
    def ok(self) -> bool:
        return all(e.meets_eta for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "D": format_number(self.expansion),
            "eta": format_number(self.eta),
            "ok": self.ok,
            "entries": [e.to_dict() for e in self.entries],
        }
