"""Marginal constraint check."""

from __future__ import annotations

from typing import TYPE_CHECKING

from otcert.certify.models import CheckResult

if TYPE_CHECKING:
    from otcert.certify.engine import CertificationContext
    from otcert.solver.models import TransportPlan


class MarginalsCheck:
    """Row sums must match mu and column sums nu, within tol."""

    name = "marginals"
    requires: tuple[str, ...] = ()

    def evaluate(self, plan: TransportPlan, context: CertificationContext) -> CheckResult:
        shape = (context.mu.size, context.nu.size)
        if (plan.n_rows, plan.n_cols) != shape:
            return CheckResult(
                check_name=self.name,
                passed=False,
                reason=(
                    f"Plan is {plan.n_rows}x{plan.n_cols}, "
                    f"measures have {shape[0]}x{shape[1]} atoms"
                ),
            )

        error = plan.marginal_error(context.mu, context.nu)
        if error > context.tol:
            return CheckResult(
                check_name=self.name,
                passed=False,
                reason=f"Marginal error {error:.3g} exceeds tolerance {context.tol:g}",
            )
        return CheckResult(check_name=self.name, passed=True)
