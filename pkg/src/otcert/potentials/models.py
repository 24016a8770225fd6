"""Pydantic models for dual potentials and feasibility reports."""

from __future__ import annotations

import math
from enum import StrEnum
from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

from otcert.config import CONSTRUCTION_TOL
from otcert.measures.models import CostValue
from otcert.monotonicity.models import SupportSet


def parse_potential_value(value: Any) -> float:
    """Parse a potential in R u {-inf}; the string "-inf" means negative infinity."""
    if isinstance(value, str):
        if value.strip().lower() in ("-inf", "-infinity"):
            return -math.inf
        raise ValueError(f"Unknown potential literal {value!r}, expected a number or '-inf'")
    v = float(value)
    if math.isnan(v) or v == math.inf:
        raise ValueError(f"Potential value {v} is not in R u {{-inf}}")
    return v


def dump_potential_value(value: float) -> float | str:
    return "-inf" if value == -math.inf else value


PotentialValue = Annotated[
    float,
    BeforeValidator(parse_potential_value),
    PlainSerializer(dump_potential_value, return_type=float | str, when_used="json"),
]


class Direction(StrEnum):
    X_TO_Y = "x_to_y"
    Y_TO_X = "y_to_x"


class PotentialPair(BaseModel):
    """Dual functions (phi, psi) on the mu and nu atoms with a claimed contact set.

    Serialized as `{"phi": [..], "psi": [..], "contact": [[i, j], ..], "tol": ..}`.
    """

    model_config = ConfigDict(frozen=True)

    phi: tuple[PotentialValue, ...]
    psi: tuple[PotentialValue, ...]
    contact: tuple[tuple[int, int], ...] = ()
    tol: float = Field(default=CONSTRUCTION_TOL, ge=0.0)

    def phi_array(self) -> np.ndarray:
        return np.asarray(self.phi, dtype=float)

    def psi_array(self) -> np.ndarray:
        return np.asarray(self.psi, dtype=float)

    def contact_set(self) -> SupportSet:
        return SupportSet(pairs=self.contact)

    def shifted(self, r: float) -> PotentialPair:
        """Gauge transform (phi + r, psi - r)."""
        return self.model_copy(
            update={
                "phi": tuple(v + r for v in self.phi),
                "psi": tuple(v - r for v in self.psi),
            }
        )


class FeasibilityReport(BaseModel):
    passed: bool
    tol: float
    max_violation: float = 0.0
    worst_pair: tuple[int, int] | None = None
    max_contact_residual: CostValue = 0.0
    worst_contact_pair: tuple[int, int] | None = None
    failures: list[str] = Field(default_factory=list)
