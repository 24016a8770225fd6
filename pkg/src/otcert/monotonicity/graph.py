"""Pair graph over a support set and Bellman-Ford with negative-cycle recovery."""

import numpy as np

from otcert.errors import IndexOutOfRangeError, InfiniteOnSupportError
from otcert.monotonicity.models import SupportSet


def check_support(gamma: SupportSet, costs: np.ndarray) -> None:
    """Raise if a pair is out of range or sits on an infinite cost."""
    rows, cols = costs.shape
    for i, j in gamma.pairs:
        if not (0 <= i < rows and 0 <= j < cols):
            raise IndexOutOfRangeError(f"Pair ({i}, {j}) outside a {rows}x{cols} cost matrix")
    infinite = gamma.infinite_pairs(costs)
    if infinite:
        raise InfiniteOnSupportError(infinite[0])


def pair_graph(gamma: SupportSet, costs: np.ndarray) -> np.ndarray:
    """Edge weights w[p, q] = c(x_p, y_q) - c(x_q, y_q) between support pairs.

    Edges with an infinite cross cost are absent (+inf weight), as are self-loops.
    A cycle p_0 -> ... -> p_{k-1} -> p_0 has weight equal to minus the cost
    improvement of handing y_{p_{a+1}} to x_{p_a}.
    """
    rows, cols = gamma.rows(), gamma.cols()
    cross = costs[np.ix_(rows, cols)]
    own = costs[rows, cols]
    weights = cross - own[None, :]
    np.fill_diagonal(weights, np.inf)
    return weights


def canonical_rotation(cycle: list[int]) -> list[int]:
    """Rotate a cycle so its smallest node comes first."""
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def bellman_ford(weights: np.ndarray) -> tuple[np.ndarray, list[int] | None]:
    """Shortest walk weights from a virtual source tied to every node by a zero arc.

    Relaxes all arcs synchronously for at most |V| rounds and keeps the
    per-round predecessors. If the last round still improves some node, the
    best |V|-arc walk into it repeats a node, and every cycle on that walk is
    negative. Returns (dist, cycle) with cycle None when no negative cycle
    was found. The cycle follows the arcs: cycle[a] -> cycle[a + 1].
    """
    size = weights.shape[0]
    dist = np.zeros(size)
    layers: list[np.ndarray] = []
    improved = np.zeros(size, dtype=bool)
    cand = np.empty_like(weights, dtype=float)
    nodes = np.arange(size)

    for _ in range(size):
        np.add(dist[:, None], weights, out=cand)
        pred = cand.argmin(axis=0)
        best = cand[pred, nodes]
        improved = best < dist
        if not improved.any():
            return dist, None
        layers.append(np.where(improved, pred, -1))
        dist = np.where(improved, best, dist)

    node = int(np.flatnonzero(improved)[0])
    walk = [node]
    for pred in reversed(layers):
        if pred[node] >= 0:
            node = int(pred[node])
            walk.append(node)
    walk.reverse()

    seen: dict[int, int] = {}
    for pos, v in enumerate(walk):
        if v in seen:
            return dist, canonical_rotation(walk[seen[v] : pos])
        seen[v] = pos
    return dist, None
