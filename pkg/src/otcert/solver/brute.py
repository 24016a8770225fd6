"""Exhaustive permutation oracle for small assignment problems."""

import itertools
import math

import numpy as np

from otcert.errors import DimensionMismatchError, InfeasibleError, SizeExceededError
from otcert.measures.costs import validate_cost_matrix
from otcert.solver.models import SolveMethod, SolveResult, TransportPlan

BRUTE_FORCE_MAX = 9


def brute_force_optimal(costs: np.ndarray, n_max: int = BRUTE_FORCE_MAX) -> SolveResult:
    """Minimum over all n! permutations; ties go to the lexicographically smallest one."""
    costs = validate_cost_matrix(costs)
    n, m = costs.shape
    if n != m:
        raise DimensionMismatchError(f"Assignment needs a square matrix, got {n}x{m}")
    if n > n_max:
        raise SizeExceededError(f"Brute force is limited to n <= {n_max}, got {n}")

    table = costs.tolist()
    best: tuple[int, ...] | None = None
    best_total = math.inf
    for perm in itertools.permutations(range(n)):
        values = [table[i][j] for i, j in enumerate(perm)]
        if any(math.isinf(x) for x in values):
            continue
        total = math.fsum(values)
        if total < best_total:
            best, best_total = perm, total

    if best is None:
        raise InfeasibleError("Every permutation uses a forbidden (+inf) entry")

    return SolveResult(
        plan=TransportPlan.from_permutation(best),
        cost=best_total / n,
        method=SolveMethod.BRUTE,
    )
