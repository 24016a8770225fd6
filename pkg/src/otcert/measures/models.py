"""Pydantic models for ground points, discrete measures and cost specifications."""

from __future__ import annotations

import math
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    FiniteFloat,
    PlainSerializer,
    model_validator,
)

WEIGHT_SUM_TOL = 1e-12


def parse_cost_value(value: Any) -> float:
    """Parse an extended-real cost in [0, +inf]; the string "inf" means forbidden."""
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "+inf", "infinity"):
            return math.inf
        raise ValueError(f"Unknown cost literal {value!r}, expected a number or 'inf'")
    v = float(value)
    if math.isnan(v):
        raise ValueError("Cost value is NaN")
    if v < 0:
        raise ValueError(f"Cost value {v} is negative")
    return v


def dump_cost_value(value: float) -> float | str:
    return "inf" if math.isinf(value) else value


CostValue = Annotated[
    float,
    BeforeValidator(parse_cost_value),
    PlainSerializer(dump_cost_value, return_type=float | str, when_used="json"),
]
NonNegativeCost = Annotated[FiniteFloat, Field(ge=0.0)]
Point = tuple[FiniteFloat, ...]


class DiscreteMeasure(BaseModel):
    """Finitely supported probability measure.

    Zero-weight atoms are dropped, the weights must sum to one within
    WEIGHT_SUM_TOL and are then renormalized. Duplicate points are kept.
    """

    model_config = ConfigDict(frozen=True)

    points: tuple[Point, ...]
    weights: tuple[float, ...]

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        points = [
            p if isinstance(p, list | tuple | np.ndarray) else [p]
            for p in (data.get("points") or [])
        ]
        if not points:
            raise ValueError("A measure needs at least one point")
        weights = data.get("weights")
        if weights is None:
            weights = [1.0 / len(points)] * len(points)
        weights = [float(w) for w in weights]
        if len(weights) != len(points):
            raise ValueError(f"Got {len(points)} points but {len(weights)} weights")
        for w in weights:
            if not math.isfinite(w) or w < 0:
                raise ValueError(f"Weight {w} is not a finite non-negative number")

        kept = [(p, w) for p, w in zip(points, weights, strict=True) if w > 0]
        if not kept:
            raise ValueError("All weights are zero")
        total = math.fsum(w for _, w in kept)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"Weights sum to {total!r}, expected 1")
        return {
            **data,
            "points": [p for p, _ in kept],
            "weights": [w / total for _, w in kept],
        }

    @model_validator(mode="after")
    def _check_dimension(self) -> DiscreteMeasure:
        dims = {len(p) for p in self.points}
        if len(dims) != 1 or 0 in dims:
            raise ValueError(f"Points must share one dimension >= 1, got {sorted(dims)}")
        return self

    @classmethod
    def uniform(cls, points: list[Point] | np.ndarray) -> DiscreteMeasure:
        pts = [tuple(float(c) for c in np.atleast_1d(p)) for p in points]
        return cls(points=pts, weights=[1.0 / len(pts)] * len(pts))

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def points_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    def weights_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def check_torus(self) -> DiscreteMeasure:
        """Torus atoms carry one coordinate r in [0, 1), read as exp(2 pi i r)."""
        if self.dim != 1:
            raise ValueError(f"Torus points have one coordinate, got dimension {self.dim}")
        for (r,) in self.points:
            if not 0.0 <= r < 1.0:
                raise ValueError(f"Torus coordinate {r} outside [0, 1)")
        return self


class SquaredEuclidean(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["sqeuclidean"] = "sqeuclidean"


class PNorm(BaseModel):
    """c(x, y) = sum_k |x_k - y_k|^p."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["pnorm"] = "pnorm"
    p: float = Field(ge=1.0, allow_inf_nan=False)


class ExplicitMatrix(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["matrix"] = "matrix"
    values: tuple[tuple[CostValue, ...], ...]

    @model_validator(mode="after")
    def _check_shape(self) -> ExplicitMatrix:
        if not self.values or not self.values[0]:
            raise ValueError("Cost matrix must be non-empty")
        widths = {len(row) for row in self.values}
        if len(widths) != 1:
            raise ValueError(f"Cost matrix rows have different lengths: {sorted(widths)}")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.values), len(self.values[0])


class TorusShift(BaseModel):
    """Cyclic grid cost on `size` points.

    diag_cost when i == j, shift_cost when j = i + shift_steps (mod size),
    off_value otherwise.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["torus"] = "torus"
    size: int = Field(ge=1)
    shift_steps: int = 1
    diag_cost: NonNegativeCost = 1.0
    shift_cost: NonNegativeCost = 2.0
    off_value: CostValue = math.inf


CostSpec = Annotated[
    SquaredEuclidean | PNorm | ExplicitMatrix | TorusShift,
    Field(discriminator="kind"),
]
