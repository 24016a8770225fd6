"""Append-only JSONL run ledger with hash chain and artifact digests."""

import hashlib
import json
import uuid
from collections.abc import Iterable, Iterator
from pathlib import Path

from otcert.ledger.models import LedgerEntry

DIGEST_PREFIX = "sha256:"


def digest_bytes(data: bytes) -> str:
    return DIGEST_PREFIX + hashlib.sha256(data).hexdigest()


def digest_file(path: Path) -> str:
    return digest_bytes(path.read_bytes())


def iter_lines(log_path: Path) -> Iterator[tuple[int, str]]:
    """(1-based line number, stripped text) for every non-blank ledger line."""
    if not log_path.exists():
        return
    with open(log_path) as f:
        for number, line in enumerate(f, start=1):
            if line.strip():
                yield number, line.strip()


class RunLedger:
    """Append-only JSONL log of toolkit runs.

    Each entry's prev_hash points to the previous entry's hash, so a
    certificate's tolerance and outcome cannot be edited after the fact
    without breaking the chain. Artifact digests tie an entry to the exact
    plan, cost, certificate or report files of that run.
    """

    def __init__(self, log_path: Path) -> None:
        self.log_path = log_path
        last = self.read_entries(last_n=1)
        self._last_hash = last[0].entry_hash if last else None

    def log(
        self,
        command: str,
        params: dict,
        outcome: str,
        exit_code: int = 0,
        tol: float | None = None,
        result: dict | None = None,
        artifacts: Iterable[Path] = (),
    ) -> LedgerEntry:
        """Append one run; artifacts that do not exist (yet) are skipped."""
        entry = LedgerEntry(
            event_id=f"run_{uuid.uuid4().hex[:12]}",
            command=command,
            params=params,
            outcome=outcome,
            exit_code=exit_code,
            tol=tol,
            result=result,
            artifacts={str(p): digest_file(p) for p in artifacts if p.is_file()},
            prev_hash=self._last_hash,
        )
        entry.entry_hash = self.compute_hash(entry)
        self._last_hash = entry.entry_hash

        self.log_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.log_path, "a") as f:
            f.write(entry.model_dump_json() + "\n")
        return entry

    def read_entries(self, last_n: int | None = None) -> list[LedgerEntry]:
        entries = [LedgerEntry.model_validate_json(text) for _, text in iter_lines(self.log_path)]
        if last_n is None:
            return entries
        return entries[-last_n:] if last_n > 0 else []

    @staticmethod
    def compute_hash(entry: LedgerEntry) -> str:
        """Digest of the canonical JSON of every field except entry_hash."""
        hashable = entry.model_dump(mode="json", exclude={"entry_hash"})
        return digest_bytes(json.dumps(hashable, sort_keys=True).encode())
