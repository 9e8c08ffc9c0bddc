"""Data models for finite truncations of M and of (N_0, rho)."""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from embedlab.common.errors import MembershipError, ValidationError


class PointKind(Enum):
    ROOT = "root"
    INTEGER = "integer"
    FINITE_SET = "set"


class SpaceLabel(Enum):
    M = "M"
    N0 = "N0"


@dataclass(frozen=True, order=False)
class PointM:
    """A point of M: the root, an integer k >= 1 (2nd floor) or a finite set (3rd floor).

    For (N_0, rho) the root plays the role of 0 and integers are 1, 2, ...
    """

    kind: PointKind
    value: int = 0
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind is PointKind.ROOT:
            if self.value or self.elements:
                raise ValidationError("The root carries no payload")
        elif self.kind is PointKind.INTEGER:
            if self.value < 1 or self.elements:
                raise ValidationError(f"Integer points must be >= 1, got {self.value}")
        else:
            elems = self.elements
            if not elems:
                raise ValidationError("Finite-set points must be nonempty")
            if any(e < 1 for e in elems):
                raise ValidationError(f"Set elements must be >= 1, got {list(elems)}")
            if any(a >= b for a, b in zip(elems, elems[1:], strict=False)):
                raise ValidationError(f"Set elements must be strictly increasing: {list(elems)}")

    @classmethod
    def root(cls) -> PointM:
        return cls(PointKind.ROOT)

    @classmethod
    def integer(cls, k: int) -> PointM:
        return cls(PointKind.INTEGER, value=int(k))

    @classmethod
    def finite_set(cls, elements: Iterable[int]) -> PointM:
        """Build a 3rd-floor point; duplicates are rejected, order is normalized."""
        items = [int(e) for e in elements]
        if len(set(items)) != len(items):
            raise ValidationError(f"Duplicate set elements: {items}")
        return cls(PointKind.FINITE_SET, elements=tuple(sorted(items)))

    @property
    def is_root(self) -> bool:
        return self.kind is PointKind.ROOT

    @property
    def is_integer(self) -> bool:
        return self.kind is PointKind.INTEGER

    @property
    def is_set(self) -> bool:
        return self.kind is PointKind.FINITE_SET

    @property
    def bitmask(self) -> int:
        """Bit k-1 set for every element k (sets only; 0 otherwise)."""
        mask = 0
        for e in self.elements:
            mask |= 1 << (e - 1)
        return mask

    def to_string(self, label: SpaceLabel = SpaceLabel.M) -> str:
        if self.is_root:
            return "0" if label is SpaceLabel.N0 else "root"
        if self.is_integer:
            return str(self.value)
        return "{" + ",".join(str(e) for e in self.elements) + "}"

    def __str__(self) -> str:
        return self.to_string()


_SET_LITERAL = re.compile(r"^\{\s*(\d+(\s*,\s*\d+)*)\s*\}$")


def parse_point(text: str) -> PointM:
    """Inverse of :meth:`PointM.to_string`: ``root``/``0``, ``3``, ``{1,3,4}``."""
    raw = str(text).strip()
    if raw in ("root", "0", "∅"):
        return PointM.root()
    if raw.isdigit():
        return PointM.integer(int(raw))
    match = _SET_LITERAL.match(raw)
    if match:
        return PointM.finite_set(int(part) for part in match.group(1).split(","))
    raise ValidationError(f"Not a point literal: {text!r}")


def set_from_mask(mask: int) -> PointM:
    return PointM.finite_set(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True, eq=False)
class TruncatedSpace:
    """A finite metric space: ordered points plus an exact integer distance matrix.

    Immutable after construction; the matrix is a read-only numpy array.
    """

    n: int
    points: tuple[PointM, ...]
    dist: np.ndarray
    label: SpaceLabel = SpaceLabel.M
    _index: dict[PointM, int] = field(init=False, repr=False)

    def __post_init__(self):
        try:
            matrix = np.array(self.dist, dtype=np.int64)
        except (TypeError, ValueError, OverflowError) as e:
            raise ValidationError(f"Distance matrix is not an integer table: {e}") from None
        if matrix.shape != (len(self.points), len(self.points)):
            raise ValidationError(
                f"Distance matrix shape {matrix.shape} does not match {len(self.points)} points"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "dist", matrix)
        object.__setattr__(self, "points", tuple(self.points))
        index = {p: i for i, p in enumerate(self.points)}
        if len(index) != len(self.points):
            raise ValidationError("Duplicate points in space")
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[PointM]:
        return iter(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSpace):
            return NotImplemented
        return (
            self.n == other.n
            and self.label == other.label
            and self.points == other.points
            and np.array_equal(self.dist, other.dist)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.label, self.points))

    def index_of(self, point: PointM) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise MembershipError(
                f"Point {point.to_string(self.label)} is not in {self.describe()}"
            ) from None

    def d(self, x: PointM, y: PointM) -> int:
        return int(self.dist[self.index_of(x), self.index_of(y)])

    def point_names(self) -> list[str]:
        return [p.to_string(self.label) for p in self.points]

    def describe(self) -> str:
        return f"{self.label.value}_{self.n} ({len(self.points)} points)"

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "n": self.n,
            "points": self.point_names(),
            "dist": self.dist.tolist(),
        }


@dataclass(frozen=True)
class Violation:
    """One failed metric check. ``kind`` is one of
    diagonal, symmetry, range, triangle, table, bfs."""

    kind: str
    points: tuple[str, ...]
    detail: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "points": list(self.points), "detail": self.detail}


@dataclass
class ValidationReport:
    space: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
        }
