"""Tests for the assignment solver and the brute-force oracle."""

import math

import numpy as np
import pytest

from otcert.errors import DimensionMismatchError, InfeasibleError, SizeExceededError
from otcert.measures.costs import cost_matrix_from_spec, plan_cost
from otcert.measures.models import TorusShift
from otcert.monotonicity.checker import check_c_monotone
from otcert.monotonicity.models import Monotone
from otcert.solver.assignment import hungarian, solve_assignment
from otcert.solver.brute import brute_force_optimal
from otcert.solver.flow import solve_transport
from otcert.solver.models import SolveMethod


def random_costs(n: int, seed: int, m: int | None = None) -> np.ndarray:
    return np.random.default_rng(seed).uniform(0.0, 1.0, size=(n, m or n))


# --- solve_assignment ---


class TestSolveAssignment:
    def test_identity_for_swap_matrix(self):
        result = solve_assignment(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert result.plan.permutation() == [0, 1]
        assert result.cost == 0.0
        assert result.method == SolveMethod.HUNGARIAN

    def test_torus_diagonal_is_optimal(self):
        costs = cost_matrix_from_spec(TorusShift(size=5))
        result = solve_assignment(costs)
        assert result.plan.permutation() == [0, 1, 2, 3, 4]
        assert result.cost == pytest.approx(1.0, abs=1e-12)

    def test_matches_brute_force_on_7x7(self):
        for seed in range(20):
            costs = random_costs(7, seed)
            assert solve_assignment(costs).cost == pytest.approx(
                brute_force_optimal(costs).cost, abs=1e-12
            )

    def test_matches_flow_solver_on_larger_instances(self):
        for seed in range(5):
            costs = random_costs(40, seed)
            uniform = np.full(40, 1 / 40)
            expected = solve_transport(costs, uniform, uniform).cost
            assert solve_assignment(costs).cost == pytest.approx(expected, abs=1e-9)

    def test_matches_brute_force_on_random_forbidden_patterns(self):
        rng = np.random.default_rng(2024)
        for _ in range(500):
            n = int(rng.integers(2, 8))
            costs = rng.uniform(0.0, 1.0, size=(n, n))
            costs[rng.random((n, n)) < 0.2] = math.inf
            try:
                expected = brute_force_optimal(costs).cost
            except InfeasibleError:
                with pytest.raises(InfeasibleError):
                    solve_assignment(costs)
                continue
            assert solve_assignment(costs).cost == pytest.approx(expected, abs=1e-12)

    def test_one_dimensional_plan_pairs_order_statistics(self):
        rng = np.random.default_rng(8)
        for n in (5, 30, 120):
            x = rng.normal(size=n)
            y = rng.uniform(-1.0, 3.0, size=n)
            sigma = hungarian((x[:, None] - y[None, :]) ** 2)
            x_rank = np.argsort(np.argsort(x))
            y_rank = np.argsort(np.argsort(y))
            np.testing.assert_array_equal(x_rank, y_rank[sigma])

    def test_forbidden_entries_avoided(self):
        costs = np.array([[math.inf, 1.0], [1.0, math.inf]])
        result = solve_assignment(costs)
        assert result.plan.permutation() == [1, 0]
        assert result.cost == 1.0

    def test_infeasible(self):
        costs = np.array([[math.inf, math.inf], [1.0, 1.0]])
        with pytest.raises(InfeasibleError):
            solve_assignment(costs)

    def test_all_infinite(self):
        with pytest.raises(InfeasibleError):
            hungarian(np.full((3, 3), math.inf))

    def test_rectangular_rejected(self):
        with pytest.raises(DimensionMismatchError):
            solve_assignment(random_costs(3, 0, m=4))

    def test_cost_equals_plan_cost(self):
        costs = random_costs(15, 3)
        result = solve_assignment(costs)
        assert result.cost == pytest.approx(plan_cost(result.plan, costs), abs=1e-12)

    def test_marginals_uniform(self):
        result = solve_assignment(random_costs(12, 4))
        np.testing.assert_allclose(result.plan.row_sums(), 1 / 12, atol=1e-12)
        np.testing.assert_allclose(result.plan.col_sums(), 1 / 12, atol=1e-12)

    def test_optimal_support_is_monotone(self):
        costs = random_costs(25, 5)
        result = solve_assignment(costs)
        assert isinstance(check_c_monotone(result.plan.support(), costs, 1e-9), Monotone)


# --- brute_force_optimal ---


class TestBruteForce:
    def test_single_entry(self):
        assert brute_force_optimal(np.array([[3.5]])).cost == 3.5

    def test_two_by_two_reports_plan_cost(self):
        result = brute_force_optimal(np.array([[1.0, 2.0], [2.0, 1.0]]))
        assert result.plan.permutation() == [0, 1]
        assert result.cost == 1.0

    def test_ties_go_to_smallest_permutation(self):
        result = brute_force_optimal(np.ones((3, 3)))
        assert result.plan.permutation() == [0, 1, 2]

    def test_masked_torus_forces_shift(self):
        costs = cost_matrix_from_spec(TorusShift(size=4, diag_cost=0.0)).copy()
        np.fill_diagonal(costs, math.inf)
        result = brute_force_optimal(costs)
        assert result.plan.permutation() == [1, 2, 3, 0]
        assert result.cost == 2.0

    def test_size_limit(self):
        with pytest.raises(SizeExceededError):
            brute_force_optimal(random_costs(10, 0))

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            brute_force_optimal(np.full((2, 2), math.inf))
