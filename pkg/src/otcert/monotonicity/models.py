"""Pydantic models for support sets and c-monotonicity certificates."""

from __future__ import annotations

from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class SupportSet(BaseModel):
    """Distinct (i, j) index pairs into the mu / nu point lists."""

    model_config = ConfigDict(frozen=True)

    pairs: tuple[tuple[int, int], ...]

    @field_validator("pairs")
    @classmethod
    def _dedupe(cls, pairs: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
        seen: dict[tuple[int, int], None] = {}
        for i, j in pairs:
            if i < 0 or j < 0:
                raise ValueError(f"Negative index in pair ({i}, {j})")
            seen.setdefault((i, j), None)
        return tuple(seen)

    def __len__(self) -> int:
        return len(self.pairs)

    def rows(self) -> np.ndarray:
        return np.array([i for i, _ in self.pairs], dtype=int)

    def cols(self) -> np.ndarray:
        return np.array([j for _, j in self.pairs], dtype=int)

    def infinite_pairs(self, costs: np.ndarray) -> list[tuple[int, int]]:
        """Pairs whose own cost is +inf (a structural error for plan supports)."""
        return [(i, j) for i, j in self.pairs if np.isinf(costs[i, j])]


class ViolatingCycle(BaseModel):
    """A cyclic reassignment x_a -> y_{a-1} within the support that lowers total cost.

    `cycle` holds indices into the support's pair list, `pairs` the pairs themselves.
    """

    model_config = ConfigDict(frozen=True)

    cycle: tuple[int, ...] = Field(min_length=2)
    pairs: tuple[tuple[int, int], ...]
    improvement: float = Field(gt=0.0)


class Monotone(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: Literal["monotone"] = "monotone"
    tol: float = Field(ge=0.0)


class Violated(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: Literal["violated"] = "violated"
    cycle: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    improvement: float
    tol: float = Field(ge=0.0)

    @classmethod
    def from_cycle(cls, cycle: ViolatingCycle, tol: float) -> Violated:
        return cls(cycle=cycle.cycle, pairs=cycle.pairs, improvement=cycle.improvement, tol=tol)

    def violating_cycle(self) -> ViolatingCycle:
        return ViolatingCycle(cycle=self.cycle, pairs=self.pairs, improvement=self.improvement)


MonotonicityCertificate = Annotated[Monotone | Violated, Field(discriminator="verdict")]
