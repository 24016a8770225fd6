"""Pydantic models for certification checks and results."""

from pydantic import BaseModel

from otcert.measures.models import CostValue
from otcert.monotonicity.models import MonotonicityCertificate
from otcert.potentials.models import PotentialPair, PotentialValue


class CheckResult(BaseModel):
    check_name: str
    passed: bool
    reason: str | None = None
    skipped: bool = False


class CertificationResult(BaseModel):
    passed: bool
    checks: list[CheckResult]
    failure_reason: str | None = None
    plan_cost: CostValue | None = None
    dual_value: PotentialValue | None = None
    certificate: MonotonicityCertificate | None = None
    potentials: PotentialPair | None = None

    def failed_checks(self) -> list[str]:
        return [c.check_name for c in self.checks if not c.passed]
