"""Run empirical approximation schedules: sample, solve, certify, record."""

import asyncio
import time
from collections.abc import Sequence

from otcert.approximation.models import (
    ConvergenceReport,
    ConvergenceRow,
    DistributionSpec,
    check_schedule,
)
from otcert.approximation.reference import reference_cost_1d
from otcert.approximation.sampling import row_streams, sample_empirical
from otcert.config import DEFAULT_TOL
from otcert.errors import NotMonotoneError, UnsupportedSpecError
from otcert.measures.costs import cost_matrix
from otcert.measures.models import CostSpec, PNorm, SquaredEuclidean
from otcert.monotonicity.checker import relax_pair_graph
from otcert.potentials.construction import potentials_from_chains
from otcert.potentials.duality import duality_gap
from otcert.solver.assignment import solve_assignment


def _check_cost(cost: CostSpec) -> None:
    if not isinstance(cost, SquaredEuclidean | PNorm):
        raise UnsupportedSpecError(
            f"Empirical approximation runs continuous analytic costs only, got {cost.kind!r}"
        )


def run_row(
    mu_spec: DistributionSpec,
    nu_spec: DistributionSpec,
    cost: CostSpec,
    n: int,
    seed: int,
    tol: float = DEFAULT_TOL,
) -> ConvergenceRow:
    """One schedule entry. Identical specs share a single draw, so mu_n = nu_n.

    The solved support is certified by a single pair-graph relaxation whose
    chain weights also give the potentials. Raises NotMonotoneError when the
    support fails at tol.
    """
    start = time.perf_counter()
    mu_seq, nu_seq = row_streams(seed, n)
    mu = sample_empirical(mu_spec, n, mu_seq)
    nu = mu if nu_spec == mu_spec else sample_empirical(nu_spec, n, nu_seq)

    costs = cost_matrix(cost, mu, nu)
    result = solve_assignment(costs)
    gamma = result.plan.support()
    dist, violation = relax_pair_graph(gamma, costs, tol)
    if violation is not None:
        raise NotMonotoneError(violation)
    potentials = potentials_from_chains(gamma, costs, dist, tol=tol)
    gap = duality_gap(result.plan, potentials, costs, mu, nu)

    return ConvergenceRow(
        n=n,
        cost=result.cost,
        dual_gap=gap,
        wall_ms=(time.perf_counter() - start) * 1000.0,
    )


def _reference(
    mu_spec: DistributionSpec, nu_spec: DistributionSpec, cost: CostSpec
) -> float | None:
    try:
        return reference_cost_1d(mu_spec, nu_spec, cost)
    except UnsupportedSpecError:
        return None


def run_approximation(
    mu_spec: DistributionSpec,
    nu_spec: DistributionSpec,
    cost: CostSpec,
    schedule: Sequence[int],
    seed: int,
    tol: float = DEFAULT_TOL,
) -> ConvergenceReport:
    """Solve the assignment problem between n-point empirical measures for each n in schedule.

    Rows are seeded with seed + n. The reference value is attached when both
    specs are one-dimensional.
    """
    schedule = check_schedule(tuple(schedule))
    _check_cost(cost)
    rows = [run_row(mu_spec, nu_spec, cost, n, seed, tol) for n in schedule]
    return ConvergenceReport(rows=rows, reference=_reference(mu_spec, nu_spec, cost), seed=seed)


async def arun_approximation(
    mu_spec: DistributionSpec,
    nu_spec: DistributionSpec,
    cost: CostSpec,
    schedule: Sequence[int],
    seed: int,
    tol: float = DEFAULT_TOL,
) -> ConvergenceReport:
    """Concurrent variant of run_approximation; rows come back in schedule order."""
    schedule = check_schedule(tuple(schedule))
    _check_cost(cost)
    rows = await asyncio.gather(
        *(asyncio.to_thread(run_row, mu_spec, nu_spec, cost, n, seed, tol) for n in schedule)
    )
    reference = await asyncio.to_thread(_reference, mu_spec, nu_spec, cost)
    return ConvergenceReport(rows=list(rows), reference=reference, seed=seed)
