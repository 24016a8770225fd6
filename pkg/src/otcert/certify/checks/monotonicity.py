"""c-cyclical monotonicity of the plan's support."""

from __future__ import annotations

from typing import TYPE_CHECKING

from otcert.certify.models import CheckResult
from otcert.monotonicity.checker import check_c_monotone
from otcert.monotonicity.models import Violated

if TYPE_CHECKING:
    from otcert.certify.engine import CertificationContext
    from otcert.solver.models import TransportPlan


class MonotonicityCheck:
    name = "monotonicity"
    requires: tuple[str, ...] = ("marginals", "finite_support")

    def evaluate(self, plan: TransportPlan, context: CertificationContext) -> CheckResult:
        certificate = check_c_monotone(plan.support(), context.costs, context.tol)
        context.certificate = certificate
        if isinstance(certificate, Violated):
            return CheckResult(
                check_name=self.name,
                passed=False,
                reason=(
                    f"Support has an improving cycle of length {len(certificate.cycle)} "
                    f"(improvement {certificate.improvement:.6g})"
                ),
            )
        return CheckResult(check_name=self.name, passed=True)
