"""Shared fixtures.

The Monte Carlo campaigns are expensive (minutes), so they are built once
per session and shared between the statistics unit tests and the
acceptance suite.  Seeds are frozen so every run sees the same draws.
"""

import pytest

from kpzedge import ensembles

BIG_SEED = 20260823
TAIL_SEED = 424242
SAO_SEED = 9183


@pytest.fixture(scope="session")
def big_sample():
    """n = 2000, k = 40, 10^4 replicates: the workhorse for the statistical
    identity, deviation, and Laplace-functional checks."""
    return ensembles.sample_tridiag_edge(n=2000, k=40, replicates=10_000,
                                         seed=BIG_SEED)


@pytest.fixture(scope="session")
def tail_sample():
    """n = 500, k = 1, 10^5 replicates for the extreme-tail estimates."""
    return ensembles.sample_tridiag_edge(n=500, k=1, replicates=100_000,
                                         seed=TAIL_SEED)


@pytest.fixture(scope="session")
def sao_sample():
    """Stochastic Airy operator draws of the top point, 10^4 replicates."""
    return ensembles.sample_sao_eigs(beta=1.0, L=20.0, h=0.02, k=1,
                                     replicates=10_000, seed=SAO_SEED)
