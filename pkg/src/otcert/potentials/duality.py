"""Dual objective and feasibility verification for potential pairs."""

import math

import numpy as np

from otcert.measures.costs import plan_cost
from otcert.measures.models import DiscreteMeasure
from otcert.potentials.models import FeasibilityReport, PotentialPair
from otcert.solver.models import TransportPlan


def _weighted_sum(values: np.ndarray, weights: np.ndarray) -> float:
    live = weights > 0
    if np.any(np.isneginf(values[live])):
        return -math.inf
    terms = weights[live] * values[live]
    return math.fsum(terms[terms > 0]) + math.fsum(terms[terms < 0])


Marginal = DiscreteMeasure | np.ndarray


def _weights(marginal: Marginal) -> np.ndarray:
    if isinstance(marginal, DiscreteMeasure):
        return marginal.weights_array()
    return np.asarray(marginal, dtype=float)


def dual_value(pair: PotentialPair, mu: Marginal, nu: Marginal) -> float:
    """sum_i mu_i phi_i + sum_j nu_j psi_j; -inf when a charged atom has potential -inf.

    Marginals are measures or bare weight vectors indexed like the potentials.
    """
    phi, psi = pair.phi_array(), pair.psi_array()
    mu_w, nu_w = _weights(mu), _weights(nu)
    if phi.size != mu_w.size or psi.size != nu_w.size:
        raise ValueError(
            f"Potentials of sizes ({phi.size}, {psi.size}) do not match marginals "
            f"({mu_w.size}, {nu_w.size})"
        )
    first = _weighted_sum(phi, mu_w)
    second = _weighted_sum(psi, nu_w)
    if math.isinf(first) or math.isinf(second):
        return -math.inf
    return math.fsum((first, second))


def duality_gap(
    plan: TransportPlan,
    pair: PotentialPair,
    costs: np.ndarray,
    mu: Marginal,
    nu: Marginal,
) -> float:
    """Primal plan cost minus dual value; +inf if either side is unbounded."""
    primal = plan_cost(plan, costs)
    dual = dual_value(pair, mu, nu)
    if math.isinf(primal) or math.isinf(dual):
        return math.inf
    return primal - dual


def verify_feasibility(pair: PotentialPair, costs: np.ndarray, tol: float) -> FeasibilityReport:
    """Check phi_i + psi_j <= c(i, j) + tol everywhere and equality within tol on the contact set.

    A contact pair with an infinite cost or a -inf potential fails outright.
    """
    phi, psi = pair.phi_array(), pair.psi_array()
    n, m = costs.shape
    if phi.size != n or psi.size != m:
        return FeasibilityReport(
            passed=False,
            tol=tol,
            failures=[f"Potentials of sizes ({phi.size}, {psi.size}) against a {n}x{m} cost"],
        )

    failures: list[str] = []
    usable = np.isfinite(costs) & np.isfinite(phi)[:, None] & np.isfinite(psi)[None, :]
    with np.errstate(invalid="ignore"):
        excess = np.where(usable, phi[:, None] + psi[None, :] - costs, -np.inf)

    max_violation = 0.0
    worst_pair: tuple[int, int] | None = None
    if usable.any():
        i, j = np.unravel_index(int(np.argmax(excess)), excess.shape)
        if excess[i, j] > 0:
            max_violation = float(excess[i, j])
            worst_pair = (int(i), int(j))
    if max_violation > tol:
        failures.append(f"phi + psi exceeds cost by {max_violation:g} at {worst_pair}")

    max_residual = 0.0
    worst_contact: tuple[int, int] | None = None
    for i, j in pair.contact:
        if not (0 <= i < n and 0 <= j < m):
            failures.append(f"Contact pair ({i}, {j}) outside a {n}x{m} cost")
            continue
        if np.isinf(costs[i, j]):
            failures.append(f"Contact pair ({i}, {j}) has infinite cost")
            residual = math.inf
        elif np.isneginf(phi[i]) or np.isneginf(psi[j]):
            failures.append(f"Contact pair ({i}, {j}) has a -inf potential")
            residual = math.inf
        else:
            residual = abs(float(phi[i] + psi[j] - costs[i, j]))
        if worst_contact is None or residual > max_residual:
            max_residual = residual
            worst_contact = (i, j)
    if math.isfinite(max_residual) and max_residual > tol:
        failures.append(f"Contact residual {max_residual:g} at {worst_contact} exceeds {tol:g}")

    return FeasibilityReport(
        passed=not failures,
        tol=tol,
        max_violation=max_violation,
        worst_pair=worst_pair,
        max_contact_residual=max_residual,
        worst_contact_pair=worst_contact,
        failures=failures,
    )
