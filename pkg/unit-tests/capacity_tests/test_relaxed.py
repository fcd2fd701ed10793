"""
Tests the closed-form solution of the relaxed placement problem.
"""
from fractions import Fraction

from hetpir.capacity.relaxed import (capacity_closed_form_n3,
                                     homogeneous_capacity, regime_label,
                                     relaxed_capacity, relaxed_cost,
                                     solve_relaxed, tradeoff_corners)
from hetpir.core.exceptions import DomainError
from hetpir.core.model import BetaProfile, StorageProfile, is_infeasible
import pytest

F = Fraction


@pytest.mark.parametrize("budgets, expected", [
    ((F(9, 10), F(3, 5), F(3, 10)), (F(1, 5), F(4, 5), 0)),
    ((1, 1, 1), (0, 0, 1)),
    ((1, 1, 0), (0, 1, 0)),
    ((F(1, 2), F(1, 2), 0), (1, 0, 0)),
    ((1, F(7, 10), F(1, 2)), (0, F(4, 5), F(1, 5))),
    ((1, 1, 1, F(1, 2)), (0, 0, F(1, 2), F(1, 2))),
])
def test_solve_relaxed(budgets, expected):
    beta = solve_relaxed(StorageProfile(budgets, 3))
    assert beta.levels == tuple(F(b) for b in expected), f"wrong relaxed optimum for m={budgets}"
    assert beta.is_lemma_structured


def test_solve_relaxed_infeasible():
    result = solve_relaxed(StorageProfile((F(1, 4), F(1, 4), F(1, 4)), 3))
    assert is_infeasible(result)
    assert result.sum_storage == F(3, 4)


def test_relaxed_cost():
    assert relaxed_cost(BetaProfile((F(1, 5), F(4, 5), 0)), 3) == 2
    assert relaxed_cost(BetaProfile((0, 0, 1)), 3) == F(13, 9)


@pytest.mark.parametrize("budgets, K, expected", [
    ((F(9, 10), F(3, 5), F(3, 10)), 3, F(2)),
    ((1, F(7, 10), F(1, 2)), 3, F(76, 45)),
    ((1, 1, 1), 3, F(13, 9)),
    ((1, 0, 0), 3, F(3)),
    ((F(1, 2), F(1, 2), F(1, 2)), 3, F(19, 8)),
    ((1, 1, 1), 2, F(4, 3)),
])
def test_relaxed_capacity(budgets, K, expected):
    profile = StorageProfile(budgets, K)
    assert relaxed_capacity(profile).download_cost == expected, \
        f"capacity of m={budgets}, K={K} should be {expected}"
    assert capacity_closed_form_n3(profile).download_cost == expected, \
        f"three-database formula disagrees for m={budgets}, K={K}"


def test_closed_form_needs_three_databases():
    with pytest.raises(DomainError):
        capacity_closed_form_n3(StorageProfile((1, 1), 3))
    assert is_infeasible(capacity_closed_form_n3(StorageProfile((F(1, 3), F(1, 3), F(1, 4)), 3)))


def test_heterogeneous_matches_homogeneous():
    # Only the sum storage matters
    for budgets in [(F(9, 10), F(3, 5), F(3, 10)), (1, F(4, 5), 0), (F(3, 5), F(3, 5), F(3, 5))]:
        profile = StorageProfile(budgets, 3)
        assert relaxed_capacity(profile).download_cost == \
            homogeneous_capacity(profile.mean_storage, 3, 3).download_cost == 2


def test_homogeneous_capacity():
    assert homogeneous_capacity(F(1, 2), 3, 3).download_cost == F(19, 8)
    assert homogeneous_capacity(F(1, 4), 4, 2).download_cost == 2
    assert is_infeasible(homogeneous_capacity(F(1, 5), 4, 2))
    with pytest.raises(DomainError):
        homogeneous_capacity(F(3, 2), 3, 3)


def test_tradeoff_corners():
    assert tradeoff_corners(3, 3) == [(F(1, 3), F(3)), (F(2, 3), F(7, 4)), (F(1), F(13, 9))]


def test_capacity_is_linear_between_corners():
    corners = tradeoff_corners(4, 3)
    for (mu_a, d_a), (mu_b, d_b) in zip(corners, corners[1:]):
        for t in [F(1, 4), F(1, 2), F(2, 3)]:
            mu = mu_a + t*(mu_b - mu_a)
            assert homogeneous_capacity(mu, 4, 3).download_cost == d_a + t*(d_b - d_a)


@pytest.mark.parametrize("budgets, label", [
    ((F(9, 10), F(3, 5), F(3, 10)), "1<=m_s<=2"),
    ((1, 1, 1), "2<=m_s<=3"),
    ((1, 1, 0), "1<=m_s<=2"),
    ((1, F(7, 10), F(1, 2)), "2<=m_s<=3"),
    ((F(1, 4), F(1, 4), 0), "m_s<1"),
    ((1,), "m_s=1"),
])
def test_regime_label(budgets, label):
    assert regime_label(StorageProfile(budgets, 3)) == label


def test_single_message():
    beta = solve_relaxed(StorageProfile((1, 1), 1))
    assert beta.levels == (0, 1)
    assert relaxed_capacity(StorageProfile((1, 1), 1)).download_cost == 1


def test_single_message_warning(caplog):
    with caplog.at_level("WARNING", logger="hetpir"):
        solve_relaxed(StorageProfile((1, 1, 1), 1))
    assert any("single message" in record.getMessage() for record in caplog.records)
