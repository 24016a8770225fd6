"""Load and save potential pairs (JSON, with "-inf" for negative infinity)."""

from pathlib import Path

from otcert.potentials.models import PotentialPair


def load_potentials(path: Path) -> PotentialPair:
    return PotentialPair.model_validate_json(path.read_text())


def save_potentials(pair: PotentialPair, path: Path) -> None:
    path.write_text(pair.model_dump_json(indent=2))
