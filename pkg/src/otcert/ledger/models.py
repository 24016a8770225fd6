"""Pydantic models for run ledger entries."""

from datetime import UTC, datetime

from pydantic import BaseModel, Field


class LedgerEntry(BaseModel):
    """One CLI run: what was asked, what came out, and the files it touched.

    `artifacts` maps each input or output file to the sha256 digest of its
    bytes at the time of the run.
    """

    event_id: str = ""
    timestamp: datetime = Field(default_factory=lambda: datetime.now(UTC))
    command: str
    params: dict
    outcome: str
    exit_code: int = 0
    tol: float | None = None
    result: dict | None = None
    artifacts: dict[str, str] = Field(default_factory=dict)
    prev_hash: str | None = None
    entry_hash: str | None = None


class VerificationResult(BaseModel):
    valid: bool
    entries_checked: int
    artifacts_checked: int = 0
    first_error: str | None = None
