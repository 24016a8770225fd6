"""Seeded empirical sampling from distribution specs.

Draws use NumPy's default generator (PCG64). A row of an experiment seeds a
`SeedSequence(seed + n)` and spawns one child stream per marginal, so rows
are independent and every run reproduces bit-exactly on one build.
"""

import numpy as np

from otcert.approximation.models import DistributionSpec, GridTorus, PointCloud, Uniform
from otcert.measures.models import DiscreteMeasure

Seed = int | np.random.SeedSequence


def draw(dist: DistributionSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. points from dist as an (n, dim) array."""
    match dist:
        case Uniform(lo=lo, hi=hi, dim=dim):
            return rng.uniform(lo, hi, size=(n, dim))
        case PointCloud():
            picks = rng.choice(dist.size, size=n, p=dist.weights_array())
            return dist.points_array()[picks]
        case GridTorus(size=size):
            return (rng.integers(0, size, size=n) / size)[:, None]
    raise TypeError(f"Unknown distribution spec {dist!r}")


def sample_empirical(dist: DistributionSpec, n: int, seed: Seed) -> DiscreteMeasure:
    """Empirical measure (1/n) sum_k delta_{x_k} of n draws from dist."""
    if n < 1:
        raise ValueError(f"Sample size must be >= 1, got {n}")
    points = draw(dist, n, np.random.default_rng(seed))
    return DiscreteMeasure.uniform(points)


def row_streams(seed: int, n: int) -> tuple[np.random.SeedSequence, np.random.SeedSequence]:
    mu_seq, nu_seq = np.random.SeedSequence(seed + n).spawn(2)
    return mu_seq, nu_seq
