"""Separating coordinates for disjoint pairs of 3rd-floor points.

For an embedding f into linf with d <= ||f(x) - f(y)|| <= D d and D < 2,
and disjoint A, B: d(A, B) = 4, so some coordinate j and sign s give
s (f(A)_j - f(B)_j) >= 4. Since d(a, A) = d(b, B) = 1, for every a in A,
b in B

    s (f(a)_j - f(b)_j) >= 4 - 2D = eta.

The coordinate functional s e_j lies in every set X_{a,b}.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from itertools import product

import numpy as np

from embedlab.common.errors import ValidationError
from embedlab.common.rationals import parse_rational
from embedlab.metric.models import PointM

from .distortion import distortion
from .models import EmbeddingMap, NormTag, WitnessEntry, WitnessReport

SET_DISTANCE = 4


def _as_number(value) -> Fraction | float:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    return float(value)


def expansion_constant(f: EmbeddingMap, D: Fraction | float | str | None = None) -> Fraction | float:
    """The certified D for ``f``: given explicitly, or C2 computed from the map."""
    if D is None:
        value = distortion(f).c2
    elif isinstance(D, str):
        value = parse_rational(D)
    else:
        value = D
    if value >= 2:
        raise ValidationError(f"Witness extraction needs D < 2, got {value}")
    return value


def _check_pair(a_set: Sequence[int], b_set: Sequence[int]) -> None:
    if not a_set or not b_set:
        raise ValidationError("A and B must be nonempty")
    overlap = set(a_set) & set(b_set)
    if overlap:
        raise ValidationError(f"A and B must be disjoint; both contain {sorted(overlap)}")


def extract_witness(
    f: EmbeddingMap,
    a_set: Iterable[int],
    b_set: Iterable[int],
    D: Fraction | float | str | None = None,
) -> WitnessEntry:
    """Coordinate j and sign s attaining ||f(A) - f(B)||_inf, with the min separation."""
    if f.target is not NormTag.LINF:
        raise ValidationError(f"Witness extraction needs an linf target, got {f.target.value}")
    a_set = tuple(sorted(int(a) for a in a_set))
    b_set = tuple(sorted(int(b) for b in b_set))
    _check_pair(a_set, b_set)
    expansion = expansion_constant(f, D)
    eta = 4 - 2 * expansion

    g = f.rooted()
    a_point, b_point = PointM.finite_set(a_set), PointM.finite_set(b_set)
    a_imgs = [g.image(PointM.integer(a)) for a in a_set]
    b_imgs = [g.image(PointM.integer(b)) for b in b_set]
    diff = g.image(a_point) - g.image(b_point)

    magnitudes = np.abs(diff)
    j = int(np.argmax(magnitudes))
    gap = _as_number(magnitudes[j])
    if gap < SET_DISTANCE:
        return WitnessEntry(a_set=a_set, b_set=b_set, eta=eta, feasible=False, set_gap=gap)

    sign = 1 if diff[j] > 0 else -1
    separation = min(_as_number(sign * (fa[j] - fb[j])) for fa, fb in product(a_imgs, b_imgs))
    return WitnessEntry(
        a_set=a_set,
        b_set=b_set,
        eta=eta,
        feasible=True,
        coordinate=j,
        sign=sign,
        separation=separation,
        set_gap=gap,
    )


def disjoint_pairs(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every ordered pair of disjoint nonempty subsets of {1..n} (3^n - 2^(n+1) + 1 pairs)."""
    for labels in product((0, 1, 2), repeat=n):
        a = tuple(i + 1 for i, lab in enumerate(labels) if lab == 1)
        b = tuple(i + 1 for i, lab in enumerate(labels) if lab == 2)
        if a and b:
            yield a, b


def witness_report(
    f: EmbeddingMap,
    pairs: Iterable[tuple[Iterable[int], Iterable[int]]],
    D: Fraction | float | str | None = None,
) -> WitnessReport:
    expansion = expansion_constant(f, D)
    report = WitnessReport(expansion=expansion)
    for a_set, b_set in pairs:
        report.entries.append(extract_witness(f, a_set, b_set, D=expansion))
    return report


def alternating_witnesses(
    f: EmbeddingMap,
    sequence: Sequence[int],
    D: Fraction | float | str | None = None,
) -> WitnessReport:
    """Witnesses for A_N = {k_2, k_4, ..., k_2N}, B_N = {k_1, k_3, ..., k_2N-1}.

    One functional per N separating the even-indexed terms of the sequence
    from the odd-indexed ones; N runs up to len(sequence) // 2.
    """
    terms = [int(k) for k in sequence]
    if any(b <= a for a, b in zip(terms, terms[1:], strict=False)):
        raise ValidationError(f"Sequence must be strictly increasing: {terms}")
    pairs = []
    for big_n in range(1, len(terms) // 2 + 1):
        evens = terms[1 : 2 * big_n : 2]
        odds = terms[0 : 2 * big_n : 2]
        pairs.append((evens, odds))
    return witness_report(f, pairs, D=D)
