"""Balanced assignment with forbidden (+inf) edges, backed by SciPy's LSAP solver."""

import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from otcert.errors import DimensionMismatchError, InfeasibleError
from otcert.measures.costs import validate_cost_matrix
from otcert.solver.models import SolveMethod, SolveResult, TransportPlan


def hungarian(costs: np.ndarray) -> np.ndarray:
    """Minimum-cost perfect matching of a square matrix.

    Entries equal to +inf are never matched. Returns sigma with
    sigma[i] = column assigned to row i.
    """
    try:
        rows, cols = linear_sum_assignment(costs)
    except ValueError as e:
        raise InfeasibleError(f"No perfect matching avoids the +inf entries: {e}") from e
    if np.isinf(costs[rows, cols]).any():
        raise InfeasibleError("No perfect matching avoids the +inf entries")
    sigma = np.empty(costs.shape[0], dtype=int)
    sigma[rows] = cols
    return sigma


def assignment_cost(costs: np.ndarray, sigma: np.ndarray | list[int]) -> float:
    """Plan-integrated cost sum_i c(i, sigma(i)) / n of a uniform permutation plan."""
    n = len(sigma)
    return math.fsum(float(costs[i, sigma[i]]) for i in range(n)) / n


def solve_assignment(costs: np.ndarray) -> SolveResult:
    """Optimal uniform permutation plan for a square cost matrix.

    The reported cost is I(pi) of the permutation plan, i.e. the assignment
    sum divided by n.
    """
    costs = validate_cost_matrix(costs)
    n, m = costs.shape
    if n != m:
        raise DimensionMismatchError(f"Assignment needs a square matrix, got {n}x{m}")

    sigma = hungarian(costs)
    return SolveResult(
        plan=TransportPlan.from_permutation(sigma.tolist()),
        cost=assignment_cost(costs, sigma),
        method=SolveMethod.HUNGARIAN,
    )
