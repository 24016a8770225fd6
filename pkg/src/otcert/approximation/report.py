"""Convergence report files: CSV with a trailing reference comment, or JSON."""

import csv
import io
from pathlib import Path

import yaml

from otcert.approximation.models import ApproxConfig, ConvergenceReport, ConvergenceRow

CSV_FIELDS = ("n", "cost", "dual_gap", "wall_ms")
REFERENCE_PREFIX = "# reference="
SEED_PREFIX = "# seed="


def load_approx_config(path: Path) -> ApproxConfig:
    """Read an experiment config; JSON files parse as YAML too."""
    if not path.exists():
        raise FileNotFoundError(f"Config not found: {path}")
    with open(path) as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        raise ValueError(f"Config {path} is not a mapping")
    return ApproxConfig(**data)


def report_to_csv(report: ConvergenceReport) -> str:
    output = io.StringIO()
    writer = csv.DictWriter(output, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in report.rows:
        writer.writerow({k: repr(getattr(row, k)) for k in CSV_FIELDS})
    output.write(f"{SEED_PREFIX}{report.seed}\n")
    if report.reference is not None:
        output.write(f"{REFERENCE_PREFIX}{report.reference!r}\n")
    return output.getvalue()


def report_from_csv(text: str) -> ConvergenceReport:
    reference: float | None = None
    seed = 0
    body: list[str] = []
    for line in text.splitlines():
        if line.startswith(REFERENCE_PREFIX):
            reference = float(line.removeprefix(REFERENCE_PREFIX))
        elif line.startswith(SEED_PREFIX):
            seed = int(line.removeprefix(SEED_PREFIX))
        elif line.strip():
            body.append(line)
    rows = [ConvergenceRow(**record) for record in csv.DictReader(body)]
    return ConvergenceReport(rows=rows, reference=reference, seed=seed)


def write_report_csv(report: ConvergenceReport, path: Path) -> None:
    path.write_text(report_to_csv(report))


def read_report_csv(path: Path) -> ConvergenceReport:
    return report_from_csv(path.read_text())


def write_report_json(report: ConvergenceReport, path: Path) -> None:
    path.write_text(report.model_dump_json(indent=2))


def read_report_json(path: Path) -> ConvergenceReport:
    return ConvergenceReport.model_validate_json(path.read_text())
