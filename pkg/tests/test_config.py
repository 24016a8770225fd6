"""Tests for toolkit configuration loading."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from otcert.config import CONSTRUCTION_TOL, DEFAULT_TOL, GAP_TOL, ToolkitConfig, load_config


def test_defaults_without_path():
    config = load_config()
    assert config.tol == DEFAULT_TOL
    assert config.construction_tol == CONSTRUCTION_TOL
    assert config.gap_tol == GAP_TOL
    assert config.ledger_path is None
    assert config.workers == 1


def test_load_from_yaml(tmp_path: Path):
    path = tmp_path / "otcert.yaml"
    path.write_text("tol: 1.0e-6\nledger_path: runs.jsonl\nworkers: 4\n")
    config = load_config(path)
    assert config.tol == 1e-6
    assert config.ledger_path == Path("runs.jsonl")
    assert config.workers == 4
    assert config.gap_tol == GAP_TOL


def test_empty_file_gives_defaults(tmp_path: Path):
    path = tmp_path / "otcert.yaml"
    path.write_text("")
    assert load_config(path) == ToolkitConfig()


def test_missing_file(tmp_path: Path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "nope.yaml")


def test_negative_tolerance_rejected(tmp_path: Path):
    path = tmp_path / "otcert.yaml"
    path.write_text("tol: -0.1\n")
    with pytest.raises(ValidationError):
        load_config(path)


def test_zero_workers_rejected():
    with pytest.raises(ValidationError):
        ToolkitConfig(workers=0)


def test_non_mapping_rejected(tmp_path: Path):
    path = tmp_path / "otcert.yaml"
    path.write_text("- tol\n")
    with pytest.raises(ValueError):
        load_config(path)
