"""Cost evaluation, cost matrices and plan costs over extended reals."""

from __future__ import annotations

import math
from collections.abc import Sequence
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from otcert.errors import DimensionMismatchError, IndexOutOfRangeError, InfiniteCostError
from otcert.measures.models import (
    CostSpec,
    DiscreteMeasure,
    ExplicitMatrix,
    PNorm,
    SquaredEuclidean,
    TorusShift,
)

if TYPE_CHECKING:
    from otcert.solver.models import TransportPlan


def add_costs(*values: float) -> float:
    """Extended-real sum: any +inf operand makes the sum +inf."""
    if any(math.isinf(v) for v in values):
        return math.inf
    return math.fsum(values)


def cost_difference(minuend: float, subtrahend: float) -> float:
    """Difference of two costs; only defined for a finite minuend."""
    if math.isinf(minuend):
        raise InfiniteCostError("Cannot subtract from an infinite cost")
    return minuend - subtrahend


def _check_index(index: int, size: int, axis: str) -> int:
    if not 0 <= index < size:
        raise IndexOutOfRangeError(f"{axis} index {index} out of range for size {size}")
    return index


def _torus_cost(spec: TorusShift, i: int, j: int) -> float:
    if i == j:
        return spec.diag_cost
    if (j - i) % spec.size == spec.shift_steps % spec.size:
        return spec.shift_cost
    return spec.off_value


def eval_cost(spec: CostSpec, x: Sequence[float] | int, y: Sequence[float] | int) -> float:
    """Evaluate c(x, y).

    Analytic specs take points; ExplicitMatrix and TorusShift take indices.
    """
    match spec:
        case SquaredEuclidean() | PNorm():
            if isinstance(x, int) or isinstance(y, int):
                raise TypeError(f"{spec.kind} cost expects points, not indices")
            if len(x) != len(y):
                raise DimensionMismatchError(f"Point dimensions differ: {len(x)} vs {len(y)}")
            total = 0.0
            for a, b in zip(x, y, strict=True):
                d = float(a) - float(b)
                total += d * d if isinstance(spec, SquaredEuclidean) else abs(d) ** spec.p
            return total
        case ExplicitMatrix():
            rows, cols = spec.shape
            return spec.values[_check_index(int(x), rows, "row")][_check_index(int(y), cols, "col")]
        case TorusShift():
            i = _check_index(int(x), spec.size, "row")
            j = _check_index(int(y), spec.size, "col")
            return _torus_cost(spec, i, j)
    raise TypeError(f"Unknown cost spec: {spec!r}")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def cost_matrix_from_spec(spec: ExplicitMatrix | TorusShift) -> np.ndarray:
    """Materialize an index-based cost spec without measures."""
    if isinstance(spec, ExplicitMatrix):
        return _frozen(np.array(spec.values, dtype=float))
    if isinstance(spec, TorusShift):
        idx = np.arange(spec.size)
        delta = (idx[None, :] - idx[:, None]) % spec.size
        out = np.full((spec.size, spec.size), float(spec.off_value))
        out[delta == spec.shift_steps % spec.size] = spec.shift_cost
        out[delta == 0] = spec.diag_cost
        return _frozen(out)
    raise TypeError(f"{spec.kind} cost needs measures to be materialized")


def cost_matrix(spec: CostSpec, mu: DiscreteMeasure, nu: DiscreteMeasure) -> np.ndarray:
    """Materialize c on supp(mu) x supp(nu) as a read-only float array (+inf allowed)."""
    if isinstance(spec, TorusShift):
        mu.check_torus()
        nu.check_torus()
    if isinstance(spec, ExplicitMatrix | TorusShift):
        out = cost_matrix_from_spec(spec)
        if out.shape != (mu.size, nu.size):
            raise DimensionMismatchError(
                f"{spec.kind} cost has shape {out.shape}, measures have sizes "
                f"({mu.size}, {nu.size})"
            )
        return out

    if mu.dim != nu.dim:
        raise DimensionMismatchError(f"Point dimensions differ: {mu.dim} vs {nu.dim}")
    xs = mu.points_array()
    ys = nu.points_array()
    out = np.zeros((mu.size, nu.size))
    # Coordinate-by-coordinate accumulation matches eval_cost bit for bit.
    for k in range(mu.dim):
        d = xs[:, k][:, None] - ys[:, k][None, :]
        out += d * d if isinstance(spec, SquaredEuclidean) else np.abs(d) ** spec.p
    return _frozen(out)


def validate_cost_matrix(costs: np.ndarray) -> np.ndarray:
    """Check a materialized matrix holds extended reals in [0, +inf]."""
    arr = np.asarray(costs, dtype=float)
    if arr.ndim != 2 or 0 in arr.shape:
        raise DimensionMismatchError(f"Expected a non-empty 2-D cost matrix, got {arr.shape}")
    if np.isnan(arr).any():
        raise ValueError("Cost matrix contains NaN")
    if (arr < 0).any():
        raise ValueError("Cost matrix contains negative entries")
    return arr


def plan_cost(plan: TransportPlan, costs: np.ndarray) -> float:
    """I(pi): sum of mass * cost over the support, +inf if mass sits on an infinite pair."""
    rows, cols = costs.shape
    if plan.n_rows != rows or plan.n_cols != cols:
        raise IndexOutOfRangeError(
            f"Plan is {plan.n_rows}x{plan.n_cols} but costs are {rows}x{cols}"
        )
    return add_costs(*(mass * float(costs[i, j]) for i, j, mass in plan.entries))


class TransportProblem:
    """A (mu, nu, c) triple with its cost matrix materialized once."""

    def __init__(self, mu: DiscreteMeasure, nu: DiscreteMeasure, spec: CostSpec) -> None:
        self.mu = mu
        self.nu = nu
        self.spec = spec

    @cached_property
    def costs(self) -> np.ndarray:
        return cost_matrix(self.spec, self.mu, self.nu)

    def plan_cost(self, plan: TransportPlan) -> float:
        return plan_cost(plan, self.costs)
