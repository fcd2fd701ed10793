"""
Tests the placement linear program, solved exactly and by vertex enumeration.
"""
from fractions import Fraction

import numpy as np
from hetpir.capacity.linear_program import assemble_lp, solve_lp
from hetpir.capacity.relaxed import relaxed_capacity
from hetpir.capacity.vertex_enumeration import (oracle_vertex_enumeration,
                                                standard_form_columns)
from hetpir.core.configuration import SolverParameters
from hetpir.core.exceptions import UnsupportedSizeError
from hetpir.core.model import (StorageProfile, is_infeasible, sample_profile,
                               validate_placement)
from hypothesis import given, settings, strategies as st
import pytest

F = Fraction


def test_assemble_lp():
    problem = assemble_lp(StorageProfile((F(9, 10), F(3, 5), F(3, 10)), 3))
    assert [str(s) for s in problem.columns] == ["1", "2", "3", "1,2", "1,3", "2,3", "1,2,3"]
    assert problem.objective == (3, 3, 3, F(7, 4), F(7, 4), F(7, 4), F(13, 9))
    assert problem.equality == ((1,)*7, 1)
    assert problem.inequalities[0] == ((1, 0, 0, 1, 1, 0, 1), F(9, 10))
    assert problem.inequalities[2] == ((0, 0, 1, 0, 1, 1, 1), F(3, 10))
    lp = problem.as_linear_program()
    assert lp.num_variables == 7 and lp.num_constraints == 4


@pytest.mark.parametrize("budgets, K, expected", [
    ((1, 1, 1), 3, F(13, 9)),
    ((F(9, 10), F(3, 5), F(3, 10)), 3, F(2)),
    ((1, F(7, 10), F(1, 2)), 3, F(76, 45)),
    ((1, 1), 2, F(3, 2)),
    ((F(1, 2), F(1, 4), F(1, 4), 1), 3, F(7, 4)),
    ((1, 1, 1), 1, F(1)),
])
def test_solve_lp(budgets, K, expected):
    profile = StorageProfile(budgets, K)
    plan, point = solve_lp(profile)
    assert point.download_cost == expected, f"LP optimum for m={budgets} should be {expected}"
    assert point.sum_storage == profile.sum_storage
    assert validate_placement(plan).ok, "LP optimum should be a valid placement"
    assert plan.objective() == expected


def test_solve_lp_infeasible():
    result = solve_lp(StorageProfile((F(1, 4), F(1, 4), F(1, 4)), 3))
    assert is_infeasible(result)
    assert result.sum_storage == F(3, 4)


def test_solve_lp_too_large():
    with pytest.raises(UnsupportedSizeError):
        solve_lp(StorageProfile((F(1, 2),)*17, 3))
    with pytest.raises(UnsupportedSizeError):
        solve_lp(StorageProfile((1, 1, 1), 3), SolverParameters(max_lp_databases=2))


def test_standard_form_columns():
    columns = standard_form_columns(2)
    assert [c for _, c in columns] == [(1, 1, 0), (1, 0, 1), (1, 1, 1), (0, 1, 0), (0, 0, 1)]
    assert [s is None for s, _ in columns] == [False, False, False, True, True]


@pytest.mark.parametrize("budgets, K, expected", [
    ((1, 1), 2, F(3, 2)),
    ((F(9, 10), F(3, 5), F(3, 10)), 3, F(2)),
    ((1, 1), 3, F(7, 4)),
    ((1,), 3, F(3)),
    ((1, F(7, 10), F(1, 2)), 3, F(76, 45)),
])
def test_oracle(budgets, K, expected):
    point = oracle_vertex_enumeration(StorageProfile(budgets, K))
    assert point.download_cost == expected, f"oracle optimum for m={budgets} should be {expected}"


def test_oracle_large_denominators():
    big = 10**10
    profile = StorageProfile((F(7, 10), F(big - 1, big + 1), F(big, big + 3)), 2)
    _, point = solve_lp(profile)
    oracle = oracle_vertex_enumeration(profile)
    assert oracle.download_cost == point.download_cost, \
        "oracle should agree with the LP when the budgets have large coprime denominators"
    assert oracle.download_cost == relaxed_capacity(profile).download_cost


def test_oracle_limits():
    assert is_infeasible(oracle_vertex_enumeration(StorageProfile((F(1, 4), F(1, 4)), 2)))
    with pytest.raises(UnsupportedSizeError):
        oracle_vertex_enumeration(StorageProfile((1,)*5, 2))


def test_oracle_four_databases():
    rng = np.random.default_rng(11)
    for m_s in [F(3, 2), F(5, 2), F(10, 3)]:
        profile = sample_profile(4, 3, m_s, rng)
        assert oracle_vertex_enumeration(profile).download_cost == \
            relaxed_capacity(profile).download_cost


budget = st.fractions(min_value=0, max_value=1, max_denominator=12)


@settings(max_examples=40, deadline=None)
@given(st.lists(budget, min_size=1, max_size=3), st.integers(min_value=1, max_value=4))
def test_solvers_agree(budgets, K):
    profile = StorageProfile(tuple(budgets), K)
    relaxed = relaxed_capacity(profile)
    oracle = oracle_vertex_enumeration(profile)
    lp = solve_lp(profile)
    if is_infeasible(relaxed):
        assert is_infeasible(oracle) and is_infeasible(lp)
    else:
        assert oracle.download_cost == relaxed.download_cost
        assert lp[1].download_cost == relaxed.download_cost
