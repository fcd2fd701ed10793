"""
This provides the random storage profiles shared by the integration tests.
"""

from fractions import Fraction
from math import ceil, floor

import numpy as np
from hetpir import StorageProfile, sample_profile
import pytest


def random_sum_storage(rng, lower, upper, max_denominator=60):
    """A random rational in [lower, upper]."""
    q = int(rng.integers(1, max_denominator+1))
    lo, hi = ceil(lower*q), floor(upper*q)
    return Fraction(int(rng.integers(lo, hi+1)), q)


@pytest.fixture()
def profile_sampler():

    def _profile_sampler(N, K, lower=1, upper=None, seed=0, max_denominator=20):
        """
        Yields random profiles forever, each with a random sum storage in
        [lower, upper] (upper defaults to N).
        """
        rng = np.random.default_rng(seed)
        top = N if upper is None else upper
        while True:
            m_s = random_sum_storage(rng, Fraction(lower), Fraction(top))
            yield sample_profile(N, K, m_s, rng, max_denominator)

    return _profile_sampler


@pytest.fixture()
def paired_profiles():

    def _paired_profiles(count, max_N=8, max_K=5, seed=0):
        """Pairs of random profiles sharing N, K and the sum storage."""
        rng = np.random.default_rng(seed)
        for _ in range(count):
            N = int(rng.integers(1, max_N+1))
            K = int(rng.integers(1, max_K+1))
            m_s = random_sum_storage(rng, Fraction(0), Fraction(N))
            yield (sample_profile(N, K, m_s, rng), sample_profile(N, K, m_s, rng))

    return _paired_profiles


@pytest.fixture()
def worked_profiles():
    return {
        "table": StorageProfile((Fraction(9, 10), Fraction(6, 10), Fraction(3, 10)), 3),
        "replication": StorageProfile((1, 1, 1), 3),
    }
