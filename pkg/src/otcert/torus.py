"""Cyclic torus instance: a diagonal plan against a rotation plan.

On N grid points of the circle the cost is 1 on the diagonal, 2 one rotation
step ahead and +inf elsewhere. The diagonal plan is optimal. The rotation
plan passes every cycle check shorter than its period and fails at the full
period, where handing each point back to itself saves the whole difference.
"""

from __future__ import annotations

import math
from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from otcert.measures.costs import cost_matrix_from_spec
from otcert.measures.models import DiscreteMeasure, TorusShift
from otcert.monotonicity.models import SupportSet
from otcert.solver.models import TransportPlan


class TorusPlan(StrEnum):
    DIAGONAL = "gamma1"
    SHIFT = "gamma2"


class TorusInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    size: int = Field(ge=2)
    cost: TorusShift
    gamma1: SupportSet
    gamma2: SupportSet

    @model_validator(mode="after")
    def _check_supports(self) -> TorusInstance:
        if set(self.gamma1.pairs) & set(self.gamma2.pairs):
            raise ValueError("Diagonal and shift supports must be disjoint")
        if len(self.gamma1) != self.size or len(self.gamma2) != self.size:
            raise ValueError(f"Both supports need exactly {self.size} pairs")
        return self

    def measure(self) -> DiscreteMeasure:
        """Uniform measure on the grid points k / size."""
        return DiscreteMeasure.uniform(np.arange(self.size) / self.size)

    def costs(self) -> np.ndarray:
        return cost_matrix_from_spec(self.cost)

    def support(self, which: TorusPlan) -> SupportSet:
        return self.gamma1 if which is TorusPlan.DIAGONAL else self.gamma2

    def plan(self, which: TorusPlan) -> TransportPlan:
        return TransportPlan.from_permutation([j for _, j in self.support(which).pairs])

    def shift_period(self) -> int:
        """Length of the improving cycle of the shift plan."""
        return self.size // math.gcd(self.size, self.cost.shift_steps)


def build_torus_instance(size: int, shift_steps: int = 1) -> TorusInstance:
    if size < 2:
        raise ValueError(f"Torus needs at least 2 grid points, got {size}")
    if shift_steps % size == 0:
        raise ValueError(f"Shift of {shift_steps} steps is the identity on {size} points")
    return TorusInstance(
        size=size,
        cost=TorusShift(size=size, shift_steps=shift_steps),
        gamma1=SupportSet(pairs=[(k, k) for k in range(size)]),
        gamma2=SupportSet(pairs=[(k, (k + shift_steps) % size) for k in range(size)]),
    )
