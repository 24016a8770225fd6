"""No mass on forbidden pairs."""

from __future__ import annotations

from typing import TYPE_CHECKING

from otcert.certify.models import CheckResult
from otcert.measures.costs import plan_cost

if TYPE_CHECKING:
    from otcert.certify.engine import CertificationContext
    from otcert.solver.models import TransportPlan


class FiniteSupportCheck:
    name = "finite_support"
    requires: tuple[str, ...] = ("marginals",)

    def evaluate(self, plan: TransportPlan, context: CertificationContext) -> CheckResult:
        infinite = plan.support().infinite_pairs(context.costs)
        context.plan_cost = plan_cost(plan, context.costs)
        if infinite:
            return CheckResult(
                check_name=self.name,
                passed=False,
                reason=(
                    f"Plan puts mass on {len(infinite)} infinite-cost pair(s), "
                    f"first {infinite[0]}"
                ),
            )
        return CheckResult(check_name=self.name, passed=True)
