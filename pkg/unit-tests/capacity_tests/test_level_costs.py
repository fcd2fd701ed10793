"""
Tests the replicated-database download costs and the cost of a placement.
"""
from fractions import Fraction

from hetpir.capacity.level_costs import level_cost, level_costs, plan_cost
from hetpir.core.exceptions import DomainError
from hetpir.core.model import PlacementPlan, StorageProfile
import pytest


@pytest.mark.parametrize("level, K, expected", [
    (1, 3, Fraction(3)),
    (2, 3, Fraction(7, 4)),
    (3, 3, Fraction(13, 9)),
    (2, 2, Fraction(3, 2)),
    (5, 1, Fraction(1)),
    (4, 3, Fraction(21, 16)),
])
def test_level_cost(level, K, expected):
    assert level_cost(level, K) == expected, \
        f"level cost for l={level}, K={K} should be {expected}"


@pytest.mark.parametrize("level, K", [(0, 3), (2, 0), (-1, 2)])
def test_level_cost_domain(level, K):
    with pytest.raises(DomainError):
        level_cost(level, K)


@pytest.mark.parametrize("K", range(2, 13))
def test_level_costs_decrease_convexly(K):
    costs = [c.cost for c in level_costs(12, K)]
    assert all(a > b for a, b in zip(costs, costs[1:])), \
        f"level costs should strictly decrease with the level for K={K}"
    # Convex in the level: successive decrements shrink
    drops = [a - b for a, b in zip(costs, costs[1:])]
    assert all(a >= b for a, b in zip(drops, drops[1:])), \
        f"level costs should be convex in the level for K={K}"


def test_level_costs_labels():
    assert [c.level for c in level_costs(4, 2)] == [1, 2, 3, 4]
    assert level_costs(3, 3)[1].cost == Fraction(7, 4)


def test_plan_cost():
    profile = StorageProfile((Fraction(9, 10), Fraction(3, 5), Fraction(3, 10)), 3)
    plan = PlacementPlan({"1": Fraction(1, 5), "1,2": Fraction(1, 2),
                          "1,3": Fraction(1, 5), "2,3": Fraction(1, 10)}, profile)
    assert plan_cost(plan) == 2
    assert plan_cost(PlacementPlan({"1,2,3": 1}, StorageProfile((1, 1, 1), 3))) == Fraction(13, 9)
