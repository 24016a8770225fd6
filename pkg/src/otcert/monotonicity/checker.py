"""c-cyclical monotonicity: negative-cycle certificate and exhaustive oracle."""

import itertools
import math
from collections.abc import Sequence

import numpy as np

from otcert.config import DEFAULT_TOL
from otcert.errors import InfiniteCostError, SizeExceededError
from otcert.measures.costs import add_costs, cost_difference
from otcert.monotonicity.graph import bellman_ford, canonical_rotation, check_support, pair_graph
from otcert.monotonicity.models import (
    Monotone,
    MonotonicityCertificate,
    SupportSet,
    Violated,
    ViolatingCycle,
)

BRUTE_CHECK_MAX = 7
PRUNE_ROUNDS = 8


def cycle_improvement(cycle: Sequence[tuple[int, int]], costs: np.ndarray) -> float:
    """sum_a c(x_a, y_a) - sum_a c(x_a, y_{a-1}); positive means the cycle lowers cost.

    Each x takes the y of the pair listed before it, so the shift cycle
    (0, 1), (1, 2), ..., (k-1, 0) hands every x_a back y_a.
    """
    own = add_costs(*(float(costs[i, j]) for i, j in cycle))
    if math.isinf(own):
        raise InfiniteCostError(f"Cycle {list(cycle)} holds an infinite support cost")
    shifted = add_costs(*(float(costs[i, cycle[a - 1][1]]) for a, (i, _) in enumerate(cycle)))
    return -cost_difference(shifted, own)


def _as_violation(gamma: SupportSet, walk: list[int], costs: np.ndarray) -> ViolatingCycle | None:
    # walk follows pair-graph arcs p -> q (x_p takes y_q), listed in reverse
    cycle = canonical_rotation(walk[::-1])
    pairs = [gamma.pairs[p] for p in cycle]
    improvement = cycle_improvement(pairs, costs)
    if improvement <= 0:
        return None
    return ViolatingCycle(cycle=cycle, pairs=pairs, improvement=improvement)


def _best_cycle(gamma: SupportSet, costs: np.ndarray, tol: float) -> ViolatingCycle | None:
    best: ViolatingCycle | None = None
    for k in range(2, len(gamma) + 1):
        for subset in itertools.combinations(range(len(gamma)), k):
            lead, rest = subset[0], subset[1:]
            for order in itertools.permutations(rest):
                cycle = [lead, *order]
                pairs = [gamma.pairs[p] for p in cycle]
                try:
                    improvement = cycle_improvement(pairs, costs)
                except InfiniteCostError:
                    continue
                if improvement > tol and (best is None or improvement > best.improvement):
                    best = ViolatingCycle(cycle=cycle, pairs=pairs, improvement=improvement)
    return best


def _search_past(
    gamma: SupportSet, costs: np.ndarray, weights: np.ndarray, walk: list[int], tol: float
) -> ViolatingCycle | None:
    """Look beyond a negative cycle that improves by at most tol.

    Exhaustive up to BRUTE_CHECK_MAX pairs. Larger supports drop the arcs of
    each such cycle and search again, for at most PRUNE_ROUNDS rounds.
    """
    if len(gamma) <= BRUTE_CHECK_MAX:
        return _best_cycle(gamma, costs, tol)
    pruned = weights.copy()
    shift = tol / len(gamma)
    for _ in range(PRUNE_ROUNDS):
        tail = np.asarray(walk)
        pruned[tail, np.roll(tail, -1)] = np.inf
        _, walk = bellman_ford(pruned + shift)
        if walk is None:
            return None
        found = _as_violation(gamma, walk, costs)
        if found is not None and found.improvement > tol:
            return found
    return None


def relax_pair_graph(
    gamma: SupportSet, costs: np.ndarray, tol: float
) -> tuple[np.ndarray, ViolatingCycle | None]:
    """Shortest chain weights over the pair graph, or a cycle improving cost by more than tol.

    Every arc is first lengthened by tol/|gamma|, which keeps every cycle
    improving by more than tol negative, so a clean pass certifies gamma. A
    cycle found there that improves by at most tol is set aside and the
    search goes on past it. Distances are returned only from a pass without
    a negative cycle.
    """
    dist = np.zeros(len(gamma))
    if len(gamma) < 2:
        return dist, None
    weights = pair_graph(gamma, costs)
    dist, walk = bellman_ford(weights + tol / len(gamma))
    if walk is None:
        return dist, None
    found = _as_violation(gamma, walk, costs)
    if found is not None and found.improvement > tol:
        return dist, found
    found = _search_past(gamma, costs, weights, walk, tol)
    if found is not None:
        return dist, found

    # A negative cycle under a full tol per arc improves by more than tol.
    dist, walk = bellman_ford(weights + tol)
    if walk is None:
        return dist, None
    return dist, _as_violation(gamma, walk, costs)


def find_violating_cycle(
    gamma: SupportSet, costs: np.ndarray, tol: float
) -> ViolatingCycle | None:
    return relax_pair_graph(gamma, costs, tol)[1]


def check_c_monotone(
    gamma: SupportSet, costs: np.ndarray, tol: float = DEFAULT_TOL
) -> MonotonicityCertificate:
    """Certify gamma as c-monotone up to tol, or return an explicit improving cycle.

    Any permutation splits into disjoint cycles, so checking single cycles of
    the pair graph covers every permutation of every finite subset.
    """
    if tol < 0:
        raise ValueError(f"Tolerance must be non-negative, got {tol}")
    check_support(gamma, costs)
    found = find_violating_cycle(gamma, costs, tol)
    if found is None:
        return Monotone(tol=tol)
    return Violated.from_cycle(found, tol)


def brute_check(
    gamma: SupportSet,
    costs: np.ndarray,
    n_max: int = BRUTE_CHECK_MAX,
    tol: float = 0.0,
) -> MonotonicityCertificate:
    """Exhaustive check over every cyclic reordering of every subset of gamma.

    Reports the cycle with the largest improvement (first found on ties).
    """
    if len(gamma) > n_max:
        raise SizeExceededError(f"Brute check is limited to {n_max} pairs, got {len(gamma)}")
    check_support(gamma, costs)
    best = _best_cycle(gamma, costs, tol)
    if best is None:
        return Monotone(tol=tol)
    return Violated.from_cycle(best, tol)
