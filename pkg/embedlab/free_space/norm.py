"""Free (transportation) norm of a molecule with certified strong duality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from embedlab.common.errors import MembershipError
from embedlab.common.rationals import format_rational
from embedlab.metric.models import TruncatedSpace

from .flow import min_cost_transport
from .models import Arc, FlowCertificate, LipschitzWitness, Molecule


@dataclass(frozen=True)
class FreeNorm:
    norm: Fraction
    primal: FlowCertificate
    dual: LipschitzWitness

    @property
    def gap(self) -> Fraction:
        return self.primal.cost - self.norm

    def to_dict(self, molecule: Molecule) -> dict:
        label = molecule.space.label
        return {
            "norm": format_rational(self.norm),
            "plan": self.primal.to_dict(label)["plan"],
            "dual": self.dual.to_dict(label),
            "dual_pairing": format_rational(self.dual.pairing(molecule)),
        }


def free_norm(space: TruncatedSpace, molecule: Molecule) -> FreeNorm:
    """Minimum cost of moving the positive part of ``molecule`` onto its negative part.

    Solved on the molecule's support only. Primal cost and dual pairing are
    compared exactly; a nonzero gap is a solver bug and raises.
    """
    if molecule.space != space:
        raise MembershipError(
            f"Molecule lives over {molecule.space.describe()}, not {space.describe()}"
        )
    if molecule.is_zero:
        return FreeNorm(
            norm=Fraction(0),
            primal=FlowCertificate(arcs=(), cost=Fraction(0)),
            dual=LipschitzWitness({}),
        )

    support = molecule.support
    idx = [space.index_of(p) for p in support]
    cost = [[int(space.dist[i, j]) for j in idx] for i in idx]
    solution = min_cost_transport([molecule.weight(p) for p in support], cost)

    arcs = tuple(
        Arc(source=support[i], target=support[j], mass=amount)
        for (i, j), amount in solution.flow.items()
    )
    primal = FlowCertificate(arcs=arcs, cost=solution.cost)
    dual = LipschitzWitness(dict(zip(support, solution.potentials, strict=True)))

    pairing = dual.pairing(molecule)
    if pairing != primal.cost:
        raise RuntimeError(
            f"Primal-dual gap {format_rational(primal.cost - pairing)} on {space.describe()}"
        )
    return FreeNorm(norm=primal.cost, primal=primal, dual=dual)
