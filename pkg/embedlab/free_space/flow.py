"""Exact min-cost transport by successive shortest paths.

Works on the complete directed graph over the support nodes with
unbounded arc capacity and exact Fraction flows. Each round finds, with
Bellman-Ford on the residual graph, a cheapest path from any node with
remaining supply to any node with remaining demand, and pushes as much
mass as the path allows.

The residual graph of an optimal flow has no negative cycle, so
shortest-path labels from a virtual source joined to every node give
node potentials u with u(i) - u(j) <= c(i, j), tight on every arc that
carries flow. Those potentials are the dual (1-Lipschitz) witness.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from embedlab.common.console import log

Flow = dict[tuple[int, int], Fraction]

# Residual step kinds.
_FORWARD = "forward"
_CANCEL = "cancel"


@dataclass(frozen=True)
class TransportSolution:
    flow: Flow
    cost: Fraction
    potentials: list[Fraction]
    augmentations: int


def _residual_arcs(size: int, cost: Sequence[Sequence[Fraction]], flow: Flow):
    """(tail, head, cost, kind). A cancel arc j->i undoes flow on (i, j)."""
    for i in range(size):
        for j in range(size):
            if i != j:
                yield i, j, cost[i][j], _FORWARD
    for (i, j), amount in flow.items():
        if amount > 0:
            yield j, i, -cost[i][j], _CANCEL


def _bellman_ford(
    size: int,
    cost: Sequence[Sequence[Fraction]],
    flow: Flow,
    sources: Sequence[int],
) -> tuple[list[Fraction | None], list[tuple[int, str] | None]]:
    """Multi-source shortest labels over the residual graph.

    None marks an unreachable node. Assumes no negative cycle, which holds
    for every flow produced by the augmentation loop.
    """
    label: list[Fraction | None] = [None] * size
    pred: list[tuple[int, str] | None] = [None] * size
    for s in sources:
        label[s] = Fraction(0)
    arcs = list(_residual_arcs(size, cost, flow))
    for _ in range(size):
        changed = False
        for i, j, c, kind in arcs:
            if label[i] is None:
                continue
            candidate = label[i] + c
            if label[j] is None or candidate < label[j]:
                label[j] = candidate
                pred[j] = (i, kind)
                changed = True
        if not changed:
            break
    return label, pred


def min_cost_transport(
    supplies: Sequence[Fraction | int], cost: Sequence[Sequence[int | Fraction]]
) -> TransportSolution:
    """Move positive supplies onto negative ones at minimum total cost.

    ``supplies`` must sum to zero; ``cost`` is a square nonnegative matrix.
    """
    size = len(supplies)
    excess = [Fraction(s) for s in supplies]
    if sum(excess, Fraction(0)) != 0:
        raise ValueError("Supplies must sum to zero")
    costs = [[Fraction(c) for c in row] for row in cost]
    flow: Flow = {}
    rounds = 0

    while any(e > 0 for e in excess):
        sources = [i for i in range(size) if excess[i] > 0]
        label, pred = _bellman_ford(size, costs, flow, sources)
        sinks = [i for i in range(size) if excess[i] < 0 and label[i] is not None]
        if not sinks:
            raise RuntimeError("No augmenting path although demand remains")
        target = min(sinks, key=lambda i: (label[i], i))

        steps: list[tuple[int, int, str]] = []
        node = target
        while pred[node] is not None:
            prev, kind = pred[node]
            steps.append((prev, node, kind))
            node = prev
        start = node
        steps.reverse()

        amount = min(excess[start], -excess[target])
        for i, j, kind in steps:
            if kind == _CANCEL:
                amount = min(amount, flow[(j, i)])

        for i, j, kind in steps:
            if kind == _CANCEL:
                flow[(j, i)] -= amount
                if flow[(j, i)] == 0:
                    del flow[(j, i)]
            else:
                flow[(i, j)] = flow.get((i, j), Fraction(0)) + amount
        excess[start] -= amount
        excess[target] += amount
        rounds += 1

    total = sum((amount * costs[i][j] for (i, j), amount in flow.items()), Fraction(0))
    label, _ = _bellman_ford(size, costs, flow, list(range(size)))
    potentials = [-lab for lab in label]
    log("FLOW", f"{size} nodes, {rounds} augmentations, cost {total}")
    return TransportSolution(
        flow=dict(sorted(flow.items())),
        cost=total,
        potentials=potentials,
        augmentations=rounds,
    )
