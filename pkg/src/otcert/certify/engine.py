"""Certification engine: audit a proposed plan through independent checks."""

import numpy as np

from otcert.certify.checks.duality import DualityGapCheck
from otcert.certify.checks.finite_support import FiniteSupportCheck
from otcert.certify.checks.marginals import MarginalsCheck
from otcert.certify.checks.monotonicity import MonotonicityCheck
from otcert.certify.models import CertificationResult, CheckResult
from otcert.config import CONSTRUCTION_TOL, DEFAULT_TOL, GAP_TOL
from otcert.measures.models import DiscreteMeasure
from otcert.monotonicity.models import MonotonicityCertificate
from otcert.potentials.models import PotentialPair
from otcert.solver.models import TransportPlan


class CertificationContext:
    """Instance data and tolerances a plan is certified against.

    Checks record what they compute (plan cost, certificate, potentials) here
    for the engine to report.
    """

    def __init__(
        self,
        mu: DiscreteMeasure,
        nu: DiscreteMeasure,
        costs: np.ndarray,
        tol: float = DEFAULT_TOL,
        gap_tol: float = GAP_TOL,
        construction_tol: float = CONSTRUCTION_TOL,
    ) -> None:
        self.mu = mu
        self.nu = nu
        self.costs = costs
        self.tol = tol
        self.gap_tol = gap_tol
        self.construction_tol = construction_tol
        self.plan_cost: float | None = None
        self.dual_value: float | None = None
        self.certificate: MonotonicityCertificate | None = None
        self.potentials: PotentialPair | None = None


class CertificationCheck:
    """Base class for individual certification checks."""

    name: str = "base_check"
    requires: tuple[str, ...] = ()

    def evaluate(self, plan: TransportPlan, context: CertificationContext) -> CheckResult:
        raise NotImplementedError


class CertificationEngine:
    """Run every certification check against a plan; a plan passing all of them is optimal."""

    def __init__(self) -> None:
        self.checks = self._load_checks()

    def _load_checks(self) -> list[CertificationCheck]:
        return [
            MarginalsCheck(),
            FiniteSupportCheck(),
            MonotonicityCheck(),
            DualityGapCheck(),
        ]

    def evaluate(self, plan: TransportPlan, context: CertificationContext) -> CertificationResult:
        results: list[CheckResult] = []
        failed: set[str] = set()
        for check in self.checks:
            missing = [name for name in check.requires if name in failed]
            if missing:
                result = CheckResult(
                    check_name=check.name,
                    passed=False,
                    skipped=True,
                    reason=f"Skipped: requires {', '.join(missing)}",
                )
            else:
                result = check.evaluate(plan, context)
            if not result.passed:
                failed.add(check.name)
            results.append(result)

        reasons = [r.reason for r in results if not r.passed and not r.skipped and r.reason]
        return CertificationResult(
            passed=not failed,
            checks=results,
            failure_reason="; ".join(reasons) if reasons else None,
            plan_cost=context.plan_cost,
            dual_value=context.dual_value,
            certificate=context.certificate,
            potentials=context.potentials,
        )
