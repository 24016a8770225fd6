"""Pydantic models for empirical-approximation experiments."""

from __future__ import annotations

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, field_validator, model_validator

from otcert.config import DEFAULT_TOL
from otcert.measures.models import CostSpec, DiscreteMeasure

DUAL_GAP_FLOOR = -1e-9


class Uniform(BaseModel):
    """Uniform law on the cube [lo, hi)^dim."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["uniform"] = "uniform"
    lo: FiniteFloat = 0.0
    hi: FiniteFloat = 1.0
    dim: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_bounds(self) -> Uniform:
        if not self.lo < self.hi:
            raise ValueError(f"Uniform needs lo < hi, got [{self.lo}, {self.hi})")
        return self


class PointCloud(DiscreteMeasure):
    """A finite weighted cloud, sampled with replacement."""

    kind: Literal["point_cloud"] = "point_cloud"


class GridTorus(BaseModel):
    """Uniform law on the grid {0, 1/size, ..., (size-1)/size} of the circle."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["grid_torus"] = "grid_torus"
    size: int = Field(ge=1)


DistributionSpec = Annotated[Uniform | PointCloud | GridTorus, Field(discriminator="kind")]


def check_schedule(schedule: tuple[int, ...]) -> tuple[int, ...]:
    if not schedule:
        raise ValueError("Schedule must be non-empty")
    if schedule[0] < 1:
        raise ValueError(f"Sample sizes must be >= 1, got {schedule[0]}")
    if any(b <= a for a, b in zip(schedule, schedule[1:], strict=False)):
        raise ValueError(f"Schedule must be strictly increasing, got {list(schedule)}")
    return schedule


class ApproxConfig(BaseModel):
    """Experiment definition read by `otcert approx`."""

    mu: DistributionSpec
    nu: DistributionSpec
    cost: CostSpec
    schedule: tuple[int, ...]
    seed: int = 0
    tol: float = Field(default=DEFAULT_TOL, ge=0.0)

    @field_validator("schedule")
    @classmethod
    def _valid_schedule(cls, schedule: tuple[int, ...]) -> tuple[int, ...]:
        return check_schedule(schedule)


class ConvergenceRow(BaseModel):
    n: int = Field(ge=1)
    cost: float
    dual_gap: float
    wall_ms: float = Field(ge=0.0)


class ConvergenceReport(BaseModel):
    rows: list[ConvergenceRow]
    reference: float | None = None
    seed: int

    @model_validator(mode="after")
    def _check_rows(self) -> ConvergenceReport:
        ns = [row.n for row in self.rows]
        if ns != sorted(ns):
            raise ValueError(f"Rows must be sorted by n, got {ns}")
        for row in self.rows:
            if row.dual_gap < DUAL_GAP_FLOOR:
                raise ValueError(f"Row n={row.n} has dual gap {row.dual_gap} below zero")
        return self

    def final(self) -> ConvergenceRow:
        return self.rows[-1]
