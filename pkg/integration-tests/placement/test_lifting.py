"""
Lifts the relaxed optimum of many random profiles to concrete placements, and
checks the explicit three-database assignment over a grid of budgets.
"""

from fractions import Fraction
from itertools import product

from hetpir import (FarkasCertificate, StorageProfile, beta_of, lift_beta,
                    place_n3_table, relaxed_capacity, relaxed_cost,
                    solve_lp, solve_relaxed, validate_placement)
import pytest


@pytest.mark.parametrize("K", range(1, 6))
@pytest.mark.parametrize("N", range(1, 9))
def test_lift_random_profiles(profile_sampler, N, K):
    profiles = profile_sampler(N, K, seed=100 + 10*N + K)
    for _ in range(250):
        profile = next(profiles)
        beta = solve_relaxed(profile)
        plan = lift_beta(profile, beta)
        assert not isinstance(plan, FarkasCertificate), f"lifting failed for {profile}"
        assert validate_placement(plan).ok, f"lifted placement invalid for {profile}"
        assert all(plan.load(n) == profile.budget(n) for n in range(1, N+1)), \
            f"lifted placement should fill every budget of {profile}"
        assert beta_of(plan) == beta
        assert plan.objective() == relaxed_cost(beta, profile.K)


def test_table_matches_lp_on_grid():
    tenths = [Fraction(i, 10) for i in range(11)]
    checked = 0
    for budgets in product(tenths, repeat=3):
        if sum(budgets) < 1:
            continue
        profile = StorageProfile(budgets, 3)
        plan = place_n3_table(profile)
        assert validate_placement(plan).ok, f"explicit assignment invalid for {profile}"
        _, point = solve_lp(profile)
        assert plan.objective() == point.download_cost == relaxed_capacity(profile).download_cost, \
            f"explicit assignment is not optimal for {profile}"
        checked += 1
    assert checked == 1331 - 220
