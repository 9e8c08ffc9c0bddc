"""The explicit certificate: a_i on the 2nd floor, b_i = {a_1..a_n} minus a_i."""

from __future__ import annotations

from collections.abc import Sequence

from embedlab.common.errors import CertificateError
from embedlab.metric.models import PointM, SpaceLabel, TruncatedSpace


def paper_certificate(
    space: TruncatedSpace, indices: Sequence[int]
) -> tuple[list[PointM], list[PointM]]:
    """Return (a_list, b_list) for the chosen integers.

    Guarantees d(a_i,a_j) = d(b_i,b_j) = 2 and d(a_i,b_j) = 1 for i != j,
    d(a_i,b_i) = 3. Needs n >= 3: for n = 2 the b-sets are disjoint singletons.
    """
    if space.label is not SpaceLabel.M:
        raise CertificateError(f"The certificate lives in M, not {space.describe()}")
    chosen = [int(i) for i in indices]
    if len(chosen) < 3:
        raise CertificateError(f"The certificate needs n >= 3 indices, got {len(chosen)}")
    if len(set(chosen)) != len(chosen):
        raise CertificateError(f"Certificate indices must be distinct: {chosen}")
    out_of_range = [i for i in chosen if i < 1 or i > space.n]
    if out_of_range:
        raise CertificateError(
            f"Indices {out_of_range} exceed truncation level {space.n} (must be 1..{space.n})"
        )
    a_list = [PointM.integer(i) for i in chosen]
    b_list = [PointM.finite_set(j for j in chosen if j != i) for i in chosen]
    return a_list, b_list
