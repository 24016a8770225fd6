"""Load and save plan files (JSON)."""

from pathlib import Path

from otcert.solver.models import TransportPlan


def load_plan(path: Path) -> TransportPlan:
    """Load `{"entries": [[i, j, mass], ...], "n": n, "m": m}`."""
    text = path.read_text()
    if not text.strip():
        raise ValueError(f"Empty plan file: {path}")
    return TransportPlan.model_validate_json(text)


def save_plan(plan: TransportPlan, path: Path) -> None:
    path.write_text(plan.model_dump_json(by_alias=True, indent=2))
