"""Toolkit configuration loaded from an explicit YAML file."""

from pathlib import Path

import yaml
from pydantic import BaseModel, Field

DEFAULT_TOL = 1e-9
CONSTRUCTION_TOL = 1e-12
GAP_TOL = 1e-8


class ToolkitConfig(BaseModel):
    tol: float = Field(default=DEFAULT_TOL, ge=0.0)
    construction_tol: float = Field(default=CONSTRUCTION_TOL, ge=0.0)
    gap_tol: float = Field(default=GAP_TOL, ge=0.0)
    ledger_path: Path | None = None
    workers: int = Field(default=1, ge=1)


def load_config(path: Path | None = None) -> ToolkitConfig:
    """Load config from a YAML file, or return defaults when no path is given."""
    if path is None:
        return ToolkitConfig()
    if not path.exists():
        raise FileNotFoundError(f"Config not found: {path}")

    with open(path) as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"Config {path} is not a mapping")
    return ToolkitConfig(**data)
