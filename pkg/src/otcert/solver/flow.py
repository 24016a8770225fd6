"""Exact discrete transport by successive shortest paths on the bipartite network.

Rows are supply nodes (mu weights), columns demand nodes (nu weights). Arcs
exist only for finite costs; +inf pairs are absent from the network.
"""

from __future__ import annotations

import math

import numpy as np

from otcert.errors import InfeasibleError
from otcert.measures.costs import TransportProblem, plan_cost, validate_cost_matrix
from otcert.measures.models import CostSpec, DiscreteMeasure
from otcert.solver.models import MARGINAL_TOL, SolveMethod, SolveResult, TransportPlan

EXHAUSTED = 1e-13  # remaining supply / demand / arc flow treated as zero


class ResidualNetwork:
    """Residual graph of a partial transport flow.

    Forward arcs i -> j carry unbounded capacity at cost c[i, j]; backward arcs
    j -> i exist while flow[i, j] > 0 at cost -c[i, j].
    """

    def __init__(self, costs: np.ndarray, supply: np.ndarray, demand: np.ndarray) -> None:
        self.costs = costs
        self.finite = np.isfinite(costs)
        self.forward = np.where(self.finite, costs, np.inf)
        self.flow = np.zeros(costs.shape)
        self.supply = supply.astype(float).copy()
        self.demand = demand.astype(float).copy()
        scale = float(np.abs(costs[self.finite]).max()) if self.finite.any() else 1.0
        self._eps = 1e-12 * max(1.0, scale)

    def shortest_paths(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Bellman-Ford from every row with remaining supply.

        Returns column distances, the row each column was reached from, and
        the column each row was reached from (-1 for source rows).
        """
        n, m = self.costs.shape
        dist_row = np.where(self.supply > EXHAUSTED, 0.0, np.inf)
        dist_col = np.full(m, np.inf)
        parent_col = np.full(m, -1)
        parent_row = np.full(n, -1)
        backward = np.where(self.flow > EXHAUSTED, -np.where(self.finite, self.costs, 0.0), np.inf)

        for _ in range(n + m):
            changed = False

            cand = dist_row[:, None] + self.forward
            best = cand.min(axis=0)
            improved = best < dist_col - self._eps
            if improved.any():
                parent_col[improved] = cand.argmin(axis=0)[improved]
                dist_col[improved] = best[improved]
                changed = True

            cand = dist_col[None, :] + backward
            best = cand.min(axis=1)
            improved = best < dist_row - self._eps
            if improved.any():
                parent_row[improved] = cand.argmin(axis=1)[improved]
                dist_row[improved] = best[improved]
                changed = True

            if not changed:
                break

        return dist_col, parent_col, parent_row

    def augment(self, target: int, parent_col: np.ndarray, parent_row: np.ndarray) -> None:
        n, m = self.costs.shape
        forward_arcs: list[tuple[int, int]] = []
        backward_arcs: list[tuple[int, int]] = []
        col = target
        for _ in range(n + m):
            row = int(parent_col[col])
            forward_arcs.append((row, col))
            prev = int(parent_row[row])
            if prev < 0:
                source = row
                break
            backward_arcs.append((row, prev))
            col = prev
        else:
            raise RuntimeError("Augmenting path did not reach a source row")

        amount = min(self.supply[source], self.demand[target])
        for i, j in backward_arcs:
            amount = min(amount, self.flow[i, j])

        for i, j in forward_arcs:
            self.flow[i, j] += amount
        for i, j in backward_arcs:
            self.flow[i, j] = 0.0 if self.flow[i, j] == amount else self.flow[i, j] - amount
        self.supply[source] = 0.0 if self.supply[source] == amount else self.supply[source] - amount
        self.demand[target] = 0.0 if self.demand[target] == amount else self.demand[target] - amount


def _successive_shortest_paths(
    costs: np.ndarray, supply: np.ndarray, demand: np.ndarray
) -> np.ndarray:
    net = ResidualNetwork(costs, supply, demand)
    n, m = costs.shape
    max_rounds = 10 * (n + m) ** 2 + 10

    for _ in range(max_rounds):
        if net.supply.max() <= EXHAUSTED or net.demand.max() <= EXHAUSTED:
            break
        dist_col, parent_col, parent_row = net.shortest_paths()
        open_cols = (net.demand > EXHAUSTED) & np.isfinite(dist_col)
        if not open_cols.any():
            raise InfeasibleError(
                "Forbidden (+inf) entries disconnect the remaining supply from the demand"
            )
        target = int(np.argmin(np.where(open_cols, dist_col, np.inf)))
        net.augment(target, parent_col, parent_row)
    else:
        raise RuntimeError("Successive shortest paths did not converge")

    if net.supply.sum() > MARGINAL_TOL or net.demand.sum() > MARGINAL_TOL:
        raise InfeasibleError("Supply and demand could not be balanced")
    return net.flow


def _find_support_cycle(flow: np.ndarray) -> list[tuple[int, int]] | None:
    """Cycle of positive-flow arcs in the undirected bipartite support graph.

    Nodes 0..n-1 are rows, n..n+m-1 columns. Returns the arcs (i, j) in cycle
    order, or None if the support is a forest.
    """
    n, m = flow.shape
    adj: dict[int, list[int]] = {v: [] for v in range(n + m)}
    for i, j in zip(*np.nonzero(flow > 0), strict=True):
        adj[int(i)].append(n + int(j))
        adj[n + int(j)].append(int(i))

    parent: dict[int, int] = {}
    for root in range(n + m):
        if root in parent:
            continue
        parent[root] = -1
        stack = [(root, iter(adj[root]))]
        while stack:
            node, neighbours = stack[-1]
            for nxt in neighbours:
                if nxt == parent[node]:
                    continue
                if nxt in parent:
                    # Back edge: walk the tree from node up to nxt.
                    path = [node]
                    while path[-1] != nxt:
                        path.append(parent[path[-1]])
                    arcs = []
                    for a, b in zip(path, path[1:] + [path[0]], strict=True):
                        arcs.append((a, b - n) if a < n else (b, a - n))
                    return arcs
                parent[nxt] = node
                stack.append((nxt, iter(adj[nxt])))
                break
            else:
                stack.pop()
    return None


def reduce_to_basis(flow: np.ndarray, costs: np.ndarray) -> np.ndarray:
    """Cancel cycles in the support until it is a forest (at most n + m - 1 atoms).

    Mass is pushed around each cycle in its non-increasing cost direction, so
    the cost never goes up and marginals are untouched.
    """
    flow = flow.copy()
    flow[flow < EXHAUSTED] = 0.0
    while (cycle := _find_support_cycle(flow)) is not None:
        plus, minus = cycle[0::2], cycle[1::2]
        delta = math.fsum(costs[a] for a in plus) - math.fsum(costs[a] for a in minus)
        if delta > 0:
            plus, minus = minus, plus
        theta_arc = min(minus, key=lambda a: flow[a])
        theta = flow[theta_arc]
        for a in plus:
            flow[a] += theta
        for a in minus:
            flow[a] -= theta
        flow[theta_arc] = 0.0
        flow[flow < EXHAUSTED] = 0.0
    return flow


def _absorb_residual(flow: np.ndarray, supply: np.ndarray, demand: np.ndarray) -> np.ndarray:
    """Move mass-balance residue below MARGINAL_TOL onto the largest atom of each row/column."""
    flow = flow.copy()
    for i, residue in enumerate(supply - flow.sum(axis=1)):
        if residue != 0 and abs(residue) <= MARGINAL_TOL and flow[i].max() > 0:
            flow[i, int(np.argmax(flow[i]))] += residue
    for j, residue in enumerate(demand - flow.sum(axis=0)):
        if residue != 0 and abs(residue) <= MARGINAL_TOL and flow[:, j].max() > 0:
            flow[int(np.argmax(flow[:, j])), j] += residue
    return flow


def solve_transport(costs: np.ndarray, supply: np.ndarray, demand: np.ndarray) -> SolveResult:
    """Exact minimum-cost coupling of `supply` and `demand` under a cost matrix."""
    costs = validate_cost_matrix(costs)
    supply = np.asarray(supply, dtype=float)
    demand = np.asarray(demand, dtype=float)
    if costs.shape != (supply.size, demand.size):
        raise ValueError(
            f"Cost matrix {costs.shape} does not match marginals ({supply.size}, {demand.size})"
        )
    if abs(supply.sum() - demand.sum()) > MARGINAL_TOL:
        raise ValueError(f"Unbalanced marginals: {supply.sum()} vs {demand.sum()}")

    flow = _successive_shortest_paths(costs, supply, demand)
    flow = reduce_to_basis(flow, costs)
    flow = _absorb_residual(flow, supply, demand)

    plan = TransportPlan.from_matrix(flow)
    return SolveResult(plan=plan, cost=plan_cost(plan, costs), method=SolveMethod.FLOW)


def solve_general(mu: DiscreteMeasure, nu: DiscreteMeasure, spec: CostSpec) -> SolveResult:
    """Solve the Monge-Kantorovich problem (mu, nu, c) exactly."""
    problem = TransportProblem(mu, nu, spec)
    return solve_transport(problem.costs, mu.weights_array(), nu.weights_array())
