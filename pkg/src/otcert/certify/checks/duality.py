"""Duality gap check: potentials built on the support must close the gap."""

from __future__ import annotations

from typing import TYPE_CHECKING

from otcert.certify.models import CheckResult
from otcert.errors import OTCertError
from otcert.potentials.construction import build_potentials
from otcert.potentials.duality import dual_value, duality_gap, verify_feasibility

if TYPE_CHECKING:
    from otcert.certify.engine import CertificationContext
    from otcert.solver.models import TransportPlan


class DualityGapCheck:
    """Feasible potentials with equality on the support and |I(pi) - J(phi, psi)| <= gap_tol."""

    name = "duality_gap"
    requires: tuple[str, ...] = ("marginals", "finite_support", "monotonicity")

    def evaluate(self, plan: TransportPlan, context: CertificationContext) -> CheckResult:
        try:
            potentials = build_potentials(
                plan.support(), context.costs, tol=context.construction_tol
            )
        except OTCertError as e:
            return CheckResult(
                check_name=self.name, passed=False, reason=f"No potentials: {e}"
            )
        context.potentials = potentials
        context.dual_value = dual_value(potentials, context.mu, context.nu)

        report = verify_feasibility(potentials, context.costs, context.tol)
        if not report.passed:
            return CheckResult(
                check_name=self.name,
                passed=False,
                reason="Potentials infeasible: " + "; ".join(report.failures),
            )

        gap = duality_gap(plan, potentials, context.costs, context.mu, context.nu)
        if abs(gap) > context.gap_tol:
            return CheckResult(
                check_name=self.name,
                passed=False,
                reason=f"Duality gap {gap:.3g} exceeds tolerance {context.gap_tol:g}",
            )
        return CheckResult(check_name=self.name, passed=True)
