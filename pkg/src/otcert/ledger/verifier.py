"""Run ledger verification: hash chain and, optionally, artifact digests."""

from pathlib import Path

from pydantic import ValidationError

from otcert.ledger.logger import RunLedger, digest_file, iter_lines
from otcert.ledger.models import LedgerEntry, VerificationResult


class LedgerVerifier:
    """Check that a ledger's entries hash correctly and link in order.

    With check_artifacts, every recorded file must still exist with the
    digest it had when the run was logged.
    """

    def __init__(self, check_artifacts: bool = False) -> None:
        self.check_artifacts = check_artifacts

    def verify(self, log_path: Path) -> VerificationResult:
        prev_hash: str | None = None
        checked = 0
        artifacts = 0

        for number, text in iter_lines(log_path):
            try:
                entry = LedgerEntry.model_validate_json(text)
            except ValidationError as e:
                return self._fail(checked, artifacts, f"Line {number}: failed to parse entry: {e}")
            checked += 1
            where = f"Entry {checked} ({entry.event_id})"

            if entry.prev_hash != prev_hash:
                return self._fail(
                    checked,
                    artifacts,
                    f"{where}: prev_hash mismatch. Expected {prev_hash}, got {entry.prev_hash}",
                )
            computed = RunLedger.compute_hash(entry)
            if entry.entry_hash != computed:
                return self._fail(
                    checked,
                    artifacts,
                    f"{where}: hash mismatch. Expected {computed}, got {entry.entry_hash}",
                )
            if self.check_artifacts:
                for name, digest in entry.artifacts.items():
                    path = Path(name)
                    if not path.is_file():
                        return self._fail(checked, artifacts, f"{where}: artifact {name} missing")
                    if digest_file(path) != digest:
                        return self._fail(checked, artifacts, f"{where}: artifact {name} changed")
                    artifacts += 1
            prev_hash = entry.entry_hash

        return VerificationResult(valid=True, entries_checked=checked, artifacts_checked=artifacts)

    @staticmethod
    def _fail(checked: int, artifacts: int, message: str) -> VerificationResult:
        return VerificationResult(
            valid=False,
            entries_checked=checked,
            artifacts_checked=artifacts,
            first_error=message,
        )
