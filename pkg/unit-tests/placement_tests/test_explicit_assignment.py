"""
Tests the explicit three-database placement and the symmetric batch placement.
"""
from fractions import Fraction
from itertools import permutations

import numpy as np
from hetpir.capacity.relaxed import relaxed_capacity
from hetpir.core.exceptions import DomainError
from hetpir.core.model import (PlacementPlan, StorageProfile, is_infeasible,
                               sample_profile, validate_placement)
from hetpir.placement.explicit_assignment import (place_n3_table,
                                                  place_optimal,
                                                  place_symmetric_batch)
import pytest

F = Fraction


@pytest.mark.parametrize("budgets, expected", [
    ((F(9, 10), F(3, 5), F(3, 10)),
     {"1": F(1, 5), "1,2": F(1, 2), "1,3": F(1, 5), "2,3": F(1, 10)}),
    ((F(3, 10), F(9, 10), F(3, 5)),
     {"2": F(1, 5), "2,3": F(1, 2), "1,2": F(1, 5), "1,3": F(1, 10)}),
    ((F(1, 2), F(1, 4), F(1, 4)),
     {"1": F(1, 2), "2": F(1, 4), "3": F(1, 4)}),
    ((F(3, 5), F(1, 2), F(1, 5)),
     {"1": F(3, 10), "2": F(1, 5), "3": F(1, 5), "1,2": F(3, 10)}),
    ((F(1, 2), F(1, 2), F(1, 2)),
     {"1": F(1, 2), "2,3": F(1, 2)}),
    ((1, F(7, 10), F(1, 2)),
     {"1,2": F(1, 2), "1,3": F(3, 10), "1,2,3": F(1, 5)}),
    ((1, 1, 1), {"1,2,3": 1}),
])
def test_place_n3_table(budgets, expected):
    profile = StorageProfile(budgets, 3)
    plan = place_n3_table(profile)
    assert plan == PlacementPlan(expected, profile), f"wrong explicit assignment for m={budgets}"
    assert validate_placement(plan).ok
    assert plan.objective() == relaxed_capacity(profile).download_cost


def distinct_sorted_profiles(rng, count):
    profiles = [(F(9, 10), F(3, 5), F(3, 10)), (F(3, 5), F(1, 2), F(1, 5)), (1, F(7, 10), F(1, 2))]
    while len(profiles) < count:
        budgets = sorted(sample_profile(3, 3, F(int(rng.integers(10, 31)), 10), rng).budgets,
                         reverse=True)
        if len(set(budgets)) == 3:
            profiles.append(tuple(budgets))
    return profiles


@pytest.mark.parametrize("order", list(permutations(range(3))))
def test_place_n3_table_permuted(order):
    for budgets in distinct_sorted_profiles(np.random.default_rng(17), 9):
        reference = place_n3_table(StorageProfile(budgets, 3))
        permuted = StorageProfile(tuple(budgets[i] for i in order), 3)
        plan = place_n3_table(permuted)
        # database n of the permuted profile is database order[n-1]+1 of the sorted one
        mapped = {tuple(order[n-1] + 1 for n in s.members): a for s, a in plan.items()}
        assert PlacementPlan(mapped, reference.profile) == reference, \
            f"assignment for {permuted.budgets} should be a relabelling of the sorted one"


def test_place_n3_table_limits():
    assert is_infeasible(place_n3_table(StorageProfile((F(1, 4), F(1, 4), F(1, 4)), 3)))
    with pytest.raises(DomainError):
        place_n3_table(StorageProfile((1, 1), 3))


def test_place_n3_table_fills_budgets():
    rng = np.random.default_rng(5)
    for m_s in [1, F(6, 5), F(3, 2), F(19, 10), 2, F(21, 10), F(5, 2), F(29, 10), 3]:
        for _ in range(10):
            profile = sample_profile(3, 3, m_s, rng)
            plan = place_n3_table(profile)
            assert validate_placement(plan).ok, f"invalid assignment for {profile}"
            assert all(plan.load(n) == profile.budget(n) for n in (1, 2, 3)), \
                f"every budget should be filled for {profile}"


def test_place_symmetric_batch():
    profile = StorageProfile.homogeneous(F(3, 5), 3, 3)
    plan = place_symmetric_batch(profile)
    assert plan.share((1,)) == F(1, 15)
    assert plan.share((2, 3)) == F(4, 15)
    assert validate_placement(plan).ok
    assert plan.objective() == 2

    heterogeneous = place_symmetric_batch(StorageProfile((F(9, 10), F(3, 5), F(3, 10)), 3))
    report = validate_placement(heterogeneous)
    assert [v.subject for v in report.violations] == [3], \
        "only the database below the mean should overflow"
    assert is_infeasible(place_symmetric_batch(StorageProfile((F(1, 4), F(1, 4)), 3)))


def test_place_optimal():
    profile = StorageProfile((1, 1, F(1, 2), 0), 3)
    plan = place_optimal(profile)
    assert validate_placement(plan).ok
    assert plan.objective() == F(115, 72)
    assert plan.share((4,)) == 0 and plan.load(4) == 0

    assert place_optimal(StorageProfile((F(9, 10), F(3, 5), F(3, 10)), 3)).objective() == 2
    assert is_infeasible(place_optimal(StorageProfile((F(1, 5),)*4, 3)))
