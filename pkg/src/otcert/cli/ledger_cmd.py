"""otcert ledger: run ledger commands."""

import json
from pathlib import Path

import click

from otcert.cli.main import EXISTING, PATH, cli


@cli.group()
def ledger() -> None:
    """Run ledger commands."""


@ledger.command()
@click.argument("ledger_path", type=PATH)
@click.option(
    "--artifacts", "check_artifacts", is_flag=True, help="Also re-hash every recorded file"
)
def verify(ledger_path: Path, check_artifacts: bool) -> None:
    """Verify ledger hash chain integrity, and optionally the recorded files."""
    from otcert.ledger.verifier import LedgerVerifier

    if not ledger_path.exists():
        click.echo(f"No ledger found at {ledger_path}")
        return

    result = LedgerVerifier(check_artifacts).verify(ledger_path)
    if result.valid:
        files = f", {result.artifacts_checked} files unchanged" if check_artifacts else ""
        click.echo(f"Ledger verified: {result.entries_checked} entries, chain intact{files}.")
    else:
        click.echo(f"VERIFICATION FAILED at entry {result.entries_checked}", err=True)
        click.echo(f"Error: {result.first_error}", err=True)
        raise SystemExit(1)


@ledger.command()
@click.argument("ledger_path", type=EXISTING)
@click.option("--last", "n", default=20, type=int, show_default=True, help="Entries to show")
def show(ledger_path: Path, n: int) -> None:
    """Print recent ledger entries."""
    from otcert.ledger.logger import RunLedger

    for entry in RunLedger(ledger_path).read_entries(last_n=n):
        tol = f" tol={entry.tol:g}" if entry.tol is not None else ""
        click.echo(
            f"  {entry.timestamp.isoformat()[:19]}  {entry.command:<12}"
            f"{entry.outcome} (exit {entry.exit_code}){tol}"
        )


@ledger.command()
@click.argument("ledger_path", type=EXISTING)
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "csv"]))
@click.option("--output", "output_path", type=PATH, default=None, help="Output file path")
def export(ledger_path: Path, fmt: str, output_path: Path | None) -> None:
    """Export the ledger to JSON or CSV."""
    import csv
    import io

    from otcert.ledger.logger import RunLedger

    entries = RunLedger(ledger_path).read_entries()

    if fmt == "json":
        content = json.dumps([e.model_dump(mode="json") for e in entries], indent=2)
    else:
        output = io.StringIO()
        if entries:
            fields = list(entries[0].model_dump().keys())
            writer = csv.DictWriter(output, fieldnames=fields)
            writer.writeheader()
            for entry in entries:
                row = entry.model_dump(mode="json")
                row["params"] = json.dumps(row["params"])
                row["artifacts"] = json.dumps(row["artifacts"])
                if row["result"]:
                    row["result"] = json.dumps(row["result"])
                writer.writerow(row)
        content = output.getvalue()

    if output_path:
        output_path.write_text(content)
        click.echo(f"Exported {len(entries)} entries to {output_path}", err=True)
    else:
        click.echo(content)
