"""Build c-concave potentials whose superdifferential contains a monotone support."""

import numpy as np

from otcert.config import CONSTRUCTION_TOL
from otcert.errors import NotMonotoneError, RootOutOfRangeError
from otcert.monotonicity.checker import relax_pair_graph
from otcert.monotonicity.graph import check_support
from otcert.monotonicity.models import SupportSet
from otcert.potentials.models import PotentialPair
from otcert.potentials.transform import c_transform


def potentials_from_chains(
    gamma: SupportSet,
    costs: np.ndarray,
    dist: np.ndarray,
    root_index: int = 0,
    tol: float = CONSTRUCTION_TOL,
) -> PotentialPair:
    """Turn converged pair-graph chain weights into a potential pair.

    phi(x_q) = -(dist[q] - dist[root]). Atoms of mu outside gamma get the
    c-transform of the support restriction, or -inf when no finite cost
    reaches gamma's columns. psi is phi^c over all of nu.
    """
    if not 0 <= root_index < len(gamma):
        raise RootOutOfRangeError(
            f"Root index {root_index} outside a support of {len(gamma)} pairs"
        )
    n = costs.shape[0]
    rows, cols = gamma.rows(), gamma.cols()
    phi = np.full(n, np.inf)
    np.minimum.at(phi, rows, -(dist - dist[root_index]))

    xs = np.unique(rows)
    ys = np.unique(cols)
    psi_support = c_transform(phi[xs], costs[np.ix_(xs, ys)])
    outside = np.setdiff1d(np.arange(n), xs)
    if outside.size:
        reach = (costs[np.ix_(outside, ys)] - psi_support[None, :]).min(axis=1)
        phi[outside] = np.where(np.isinf(reach), -np.inf, reach)

    psi = c_transform(phi, costs)
    return PotentialPair(
        phi=tuple(phi.tolist()),
        psi=tuple(psi.tolist()),
        contact=gamma.pairs,
        tol=tol,
    )


def build_potentials(
    gamma: SupportSet,
    costs: np.ndarray,
    root_index: int = 0,
    tol: float = CONSTRUCTION_TOL,
) -> PotentialPair:
    """Chain-infimum potential over gamma, normalized to 0 at gamma[root_index].

    phi(x_q) is minus the shortest chain weight into q in the pair graph, so
    phi(x_p) <= phi(x_q) + c(x_p, y_q) - c(x_q, y_q) on every arc.
    """
    check_support(gamma, costs)
    if not 0 <= root_index < len(gamma):
        raise RootOutOfRangeError(
            f"Root index {root_index} outside a support of {len(gamma)} pairs"
        )
    dist, violation = relax_pair_graph(gamma, costs, tol)
    if violation is not None:
        raise NotMonotoneError(violation)
    return potentials_from_chains(gamma, costs, dist, root_index, tol)
