"""Pydantic models for transport plans and solver results."""

from __future__ import annotations

import math
from collections.abc import Sequence
from enum import StrEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from otcert.measures.models import CostValue, DiscreteMeasure
from otcert.monotonicity.models import SupportSet

MARGINAL_TOL = 1e-9


class SolveMethod(StrEnum):
    HUNGARIAN = "hungarian"
    FLOW = "flow"
    BRUTE = "brute"


class TransportPlan(BaseModel):
    """Sparse coupling: (i, j, mass) entries with positive mass.

    Serialized as `{"entries": [[i, j, mass], ...], "n": n, "m": m}`.
    Zero entries are dropped and repeated (i, j) entries merged.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    entries: tuple[tuple[int, int, float], ...]
    n_rows: int = Field(alias="n", ge=1)
    n_cols: int = Field(alias="m", ge=1)

    @model_validator(mode="before")
    @classmethod
    def _merge_entries(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        merged: dict[tuple[int, int], float] = {}
        for i, j, mass in data.get("entries") or []:
            mass = float(mass)
            if not math.isfinite(mass) or mass < 0:
                raise ValueError(f"Mass {mass} at ({i}, {j}) is not finite and non-negative")
            if mass > 0:
                key = (int(i), int(j))
                merged[key] = merged.get(key, 0.0) + mass
        return {**data, "entries": [(i, j, m) for (i, j), m in sorted(merged.items())]}

    @model_validator(mode="after")
    def _check_indices(self) -> TransportPlan:
        for i, j, _ in self.entries:
            if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
                raise ValueError(
                    f"Entry ({i}, {j}) outside a {self.n_rows}x{self.n_cols} plan"
                )
        return self

    @classmethod
    def from_permutation(cls, sigma: Sequence[int]) -> TransportPlan:
        n = len(sigma)
        return cls(entries=[(i, int(j), 1.0 / n) for i, j in enumerate(sigma)], n=n, m=n)

    @classmethod
    def from_matrix(cls, flow: np.ndarray) -> TransportPlan:
        rows, cols = np.nonzero(flow > 0)
        entries = [(int(i), int(j), float(flow[i, j])) for i, j in zip(rows, cols, strict=True)]
        return cls(entries=entries, n=flow.shape[0], m=flow.shape[1])

    def support(self) -> SupportSet:
        return SupportSet(pairs=[(i, j) for i, j, _ in self.entries])

    def to_matrix(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols))
        for i, j, mass in self.entries:
            out[i, j] = mass
        return out

    def row_sums(self) -> np.ndarray:
        return self.to_matrix().sum(axis=1)

    def col_sums(self) -> np.ndarray:
        return self.to_matrix().sum(axis=0)

    def marginal_error(self, mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
        """Largest absolute deviation of a row or column sum from its marginal weight."""
        if (self.n_rows, self.n_cols) != (mu.size, nu.size):
            return math.inf
        row_err = np.abs(self.row_sums() - mu.weights_array()).max()
        col_err = np.abs(self.col_sums() - nu.weights_array()).max()
        return float(max(row_err, col_err))

    def permutation(self) -> list[int] | None:
        """sigma with sigma[i] = j if the plan is a uniform permutation plan, else None."""
        if self.n_rows != self.n_cols or len(self.entries) != self.n_rows:
            return None
        sigma = [-1] * self.n_rows
        for i, j, _ in self.entries:
            if sigma[i] != -1:
                return None
            sigma[i] = j
        if sorted(sigma) != list(range(self.n_cols)):
            return None
        return sigma


class SolveResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    plan: TransportPlan
    cost: CostValue
    method: SolveMethod
