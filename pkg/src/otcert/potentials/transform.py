"""c-transforms, c-superdifferentials and contact sets on finite supports."""

from collections.abc import Sequence

import numpy as np

from otcert.errors import (
    AllNegativeInfinityError,
    DegenerateTransformError,
    DimensionMismatchError,
    InfiniteCostError,
)
from otcert.monotonicity.models import SupportSet
from otcert.potentials.models import Direction

SUPERDIFFERENTIAL_TOL = 1e-12


def c_transform(
    values: Sequence[float] | np.ndarray,
    costs: np.ndarray,
    direction: Direction = Direction.X_TO_Y,
) -> np.ndarray:
    """phi^c(y_j) = min_i (c(i, j) - phi_i) over finite terms, or the Y-to-X analogue.

    Raises DegenerateTransformError when some entry has no finite term, since
    potentials never take the value +inf.
    """
    values = np.asarray(values, dtype=float)
    mat = costs if direction is Direction.X_TO_Y else costs.T
    if values.shape != (mat.shape[0],):
        raise DimensionMismatchError(
            f"Potential has {values.size} entries, cost matrix expects {mat.shape[0]}"
        )
    finite_values = np.isfinite(values)
    if not finite_values.any():
        raise AllNegativeInfinityError("Potential is identically -inf")

    usable = np.isfinite(mat) & finite_values[:, None]
    terms = np.where(usable, mat - np.where(finite_values, values, 0.0)[:, None], np.inf)
    out = terms.min(axis=0)
    empty = np.flatnonzero(np.isinf(out))
    if empty.size:
        raise DegenerateTransformError(
            f"No finite term for entries {empty.tolist()} ({direction.value})"
        )
    return out


def superdifferential_contains(
    phi: Sequence[float] | np.ndarray,
    costs: np.ndarray,
    pair: tuple[int, int],
    tol: float = SUPERDIFFERENTIAL_TOL,
) -> bool:
    """Whether phi(z) <= phi(x_i) + c(z, y_j) - c(x_i, y_j) for every z with finite c(z, y_j)."""
    phi = np.asarray(phi, dtype=float)
    i, j = pair
    own = float(costs[i, j])
    if np.isinf(own):
        raise InfiniteCostError(f"Pair ({i}, {j}) has infinite cost")
    if not np.isfinite(phi[i]):
        raise ValueError(f"phi is -inf at row {i}")

    col = costs[:, j]
    mask = np.isfinite(col) & np.isfinite(phi)
    return bool(np.all(phi[mask] <= phi[i] + col[mask] - own + tol))


def contact_set(
    phi: Sequence[float] | np.ndarray,
    psi: Sequence[float] | np.ndarray,
    costs: np.ndarray,
    tol: float,
) -> SupportSet:
    """All finite pairs with |phi_i + psi_j - c(i, j)| <= tol."""
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    mask = np.isfinite(costs) & np.isfinite(phi)[:, None] & np.isfinite(psi)[None, :]
    with np.errstate(invalid="ignore"):
        residual = np.abs(phi[:, None] + psi[None, :] - costs)
    rows, cols = np.nonzero(mask & (residual <= tol))
    return SupportSet(pairs=list(zip(rows.tolist(), cols.tolist(), strict=True)))


def is_c_concave(phi: Sequence[float] | np.ndarray, costs: np.ndarray, tol: float) -> bool:
    """phi equals its double c-transform within tol."""
    phi = np.asarray(phi, dtype=float)
    psi = c_transform(phi, costs, Direction.X_TO_Y)
    phi_cc = c_transform(psi, costs, Direction.Y_TO_X)
    return bool(np.all(np.abs(phi - phi_cc) <= tol))
