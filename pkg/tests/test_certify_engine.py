"""Tests for certification checks and engine."""

import math

import numpy as np
import pytest

from otcert.certify.checks.duality import DualityGapCheck
from otcert.certify.checks.finite_support import FiniteSupportCheck
from otcert.certify.checks.marginals import MarginalsCheck
from otcert.certify.checks.monotonicity import MonotonicityCheck
from otcert.certify.engine import CertificationContext, CertificationEngine
from otcert.measures.costs import cost_matrix
from otcert.measures.models import DiscreteMeasure, SquaredEuclidean
from otcert.monotonicity.models import Monotone, Violated
from otcert.solver.flow import solve_general
from otcert.solver.models import TransportPlan
from otcert.torus import TorusPlan, build_torus_instance


def make_context(size: int = 4, **tols: float) -> CertificationContext:
    instance = build_torus_instance(size)
    return CertificationContext(
        mu=instance.measure(), nu=instance.measure(), costs=instance.costs(), **tols
    )


def torus_plan(size: int = 4, which: TorusPlan = TorusPlan.DIAGONAL) -> TransportPlan:
    return build_torus_instance(size).plan(which)


# --- MarginalsCheck ---


class TestMarginalsCheck:
    def test_pass_for_permutation(self):
        result = MarginalsCheck().evaluate(torus_plan(), make_context())
        assert result.passed

    def test_fail_on_mass_imbalance(self):
        plan = TransportPlan(entries=[(0, 0, 0.5), (1, 1, 0.5)], n=4, m=4)
        result = MarginalsCheck().evaluate(plan, make_context())
        assert not result.passed
        assert "Marginal error" in result.reason

    def test_fail_on_shape(self):
        result = MarginalsCheck().evaluate(torus_plan(size=3), make_context(size=4))
        assert not result.passed
        assert "3x3" in result.reason

    def test_tolerance_respected(self):
        plan = TransportPlan(
            entries=[(0, 0, 0.25 + 1e-10), (1, 1, 0.25), (2, 2, 0.25), (3, 3, 0.25 - 1e-10)],
            n=4,
            m=4,
        )
        assert MarginalsCheck().evaluate(plan, make_context(tol=1e-9)).passed
        assert not MarginalsCheck().evaluate(plan, make_context(tol=1e-11)).passed


# --- FiniteSupportCheck ---


class TestFiniteSupportCheck:
    def test_pass_records_cost(self):
        context = make_context()
        assert FiniteSupportCheck().evaluate(torus_plan(), context).passed
        assert context.plan_cost == pytest.approx(1.0, abs=1e-12)

    def test_fail_on_forbidden_pair(self):
        context = make_context()
        plan = TransportPlan.from_permutation([2, 3, 0, 1])
        result = FiniteSupportCheck().evaluate(plan, context)
        assert not result.passed
        assert "infinite-cost" in result.reason
        assert context.plan_cost == math.inf


# --- MonotonicityCheck ---


class TestMonotonicityCheck:
    def test_diagonal_monotone(self):
        context = make_context()
        assert MonotonicityCheck().evaluate(torus_plan(), context).passed
        assert isinstance(context.certificate, Monotone)

    def test_shift_violated(self):
        context = make_context(size=5)
        result = MonotonicityCheck().evaluate(torus_plan(5, TorusPlan.SHIFT), context)
        assert not result.passed
        assert "length 5" in result.reason
        assert isinstance(context.certificate, Violated)


# --- DualityGapCheck ---


class TestDualityGapCheck:
    def test_diagonal_closes_gap(self):
        context = make_context(size=6)
        assert DualityGapCheck().evaluate(torus_plan(6), context).passed
        assert context.dual_value == pytest.approx(1.0, abs=1e-12)
        assert context.potentials is not None

    def test_shift_has_no_potentials(self):
        context = make_context()
        result = DualityGapCheck().evaluate(torus_plan(which=TorusPlan.SHIFT), context)
        assert not result.passed
        assert "No potentials" in result.reason
        assert context.potentials is None


# --- CertificationEngine ---


class TestCertificationEngine:
    def test_diagonal_certified(self):
        result = CertificationEngine().evaluate(torus_plan(8), make_context(size=8))
        assert result.passed
        assert result.failure_reason is None
        assert [c.check_name for c in result.checks] == [
            "marginals",
            "finite_support",
            "monotonicity",
            "duality_gap",
        ]
        assert result.plan_cost == pytest.approx(1.0, abs=1e-12)
        assert result.dual_value == pytest.approx(1.0, abs=1e-12)

    def test_shift_rejected_and_gap_skipped(self):
        result = CertificationEngine().evaluate(
            torus_plan(5, TorusPlan.SHIFT), make_context(size=5)
        )
        assert not result.passed
        assert result.failed_checks() == ["monotonicity", "duality_gap"]
        gap = result.checks[-1]
        assert gap.skipped
        assert "monotonicity" in gap.reason
        assert "improving cycle" in result.failure_reason
        assert "Skipped" not in result.failure_reason
        assert result.plan_cost == pytest.approx(2.0, abs=1e-12)

    def test_marginal_failure_skips_everything(self):
        plan = TransportPlan(entries=[(0, 0, 1.0)], n=4, m=4)
        result = CertificationEngine().evaluate(plan, make_context())
        assert result.failed_checks() == [
            "marginals",
            "finite_support",
            "monotonicity",
            "duality_gap",
        ]
        assert [c.skipped for c in result.checks] == [False, True, True, True]
        assert result.plan_cost is None

    def test_forbidden_pair_reported(self):
        result = CertificationEngine().evaluate(
            TransportPlan.from_permutation([2, 3, 0, 1]), make_context()
        )
        assert result.failed_checks()[0] == "finite_support"
        assert result.plan_cost == math.inf

    def test_optimal_plan_certified(self):
        rng = np.random.default_rng(32)
        mu = DiscreteMeasure.uniform(rng.normal(size=(15, 2)))
        nu = DiscreteMeasure.uniform(rng.normal(size=(10, 2)))
        costs = cost_matrix(SquaredEuclidean(), mu, nu)
        plan = solve_general(mu, nu, SquaredEuclidean()).plan
        result = CertificationEngine().evaluate(plan, CertificationContext(mu, nu, costs))
        assert result.passed
        assert abs(result.plan_cost - result.dual_value) <= 1e-8

    def test_result_json_encodes_infinity(self):
        result = CertificationEngine().evaluate(
            TransportPlan.from_permutation([2, 3, 0, 1]), make_context()
        )
        assert '"plan_cost":"inf"' in result.model_dump_json()
