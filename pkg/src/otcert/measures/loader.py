"""Load and save measure and cost files (JSON)."""

import json
from pathlib import Path

from pydantic import TypeAdapter

from otcert.measures.models import CostSpec, DiscreteMeasure

_cost_adapter: TypeAdapter[CostSpec] = TypeAdapter(CostSpec)


def _read_json(path: Path) -> dict:
    with open(path) as f:
        data = json.load(f)
    if not data:
        raise ValueError(f"Empty file: {path}")
    return data


def load_measure(path: Path) -> DiscreteMeasure:
    """Load `{"points": [[..], ..], "weights": [..]}`; weights default to uniform."""
    return DiscreteMeasure.model_validate(_read_json(path))


def save_measure(measure: DiscreteMeasure, path: Path) -> None:
    path.write_text(measure.model_dump_json(indent=2))


def parse_cost_spec(data: dict) -> CostSpec:
    return _cost_adapter.validate_python(data)


def load_cost_spec(path: Path) -> CostSpec:
    """Load `{"kind": "sqeuclidean" | "pnorm" | "matrix" | "torus", ...}`."""
    return parse_cost_spec(_read_json(path))


def save_cost_spec(spec: CostSpec, path: Path) -> None:
    path.write_text(_cost_adapter.dump_json(spec, indent=2).decode())
