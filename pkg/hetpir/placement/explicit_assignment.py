"""
Placements written down directly rather than solved for: the parametric
assignment for three databases, and the symmetric batch placement that is
optimal when every database has the same budget.
"""

from math import comb

from hetpir.capacity.relaxed import solve_relaxed
from hetpir.core.exceptions import DomainError, SolverError
from hetpir.core.logging import logger
from hetpir.core.model import (Infeasible, PlacementPlan, is_infeasible,
                               subsets_of_size)
from hetpir.placement.equality_system import FarkasCertificate, lift_beta

__all__ = ["place_n3_table", "place_symmetric_batch", "place_optimal"]


def place_n3_table(profile):
    """
    The explicit optimal placement for three databases.

    The budgets are first sorted so that m_1 >= m_2 >= m_3. The assignment
    then depends on whether m_s is above 2 and, below 2, on whether
    m_1 + m_3 reaches 1; on a boundary the first matching case is used.
    The sorted labels are finally mapped back to the caller's databases.

    Args:
        profile (:class:`StorageProfile`): a profile with N = 3.

    Returns:
        :class:`PlacementPlan` or :class:`Infeasible`: the placement, filling
            every budget, or :class:`Infeasible` if m_s < 1.

    Raises:
        DomainError: if the profile does not have three databases.
    """
    if profile.N != 3:
        raise DomainError(f"The explicit assignment needs N=3, not N={profile.N}")
    m_s = profile.sum_storage
    if m_s < 1:
        return Infeasible(m_s)

    order = profile.descending_order()
    m1, m2, m3 = profile.permuted(order).budgets

    if m_s <= 2 and m1 + m3 >= 1:
        case = "1<=m_s<=2, m_1+m_3>=1"
        shares = {(1,): 2 - m_s, (1, 2): m1 + m2 - 1, (1, 3): m1 + m3 - 1, (2, 3): 1 - m1}
    elif m_s <= 2:
        case = "1<=m_s<=2, m_1+m_3<=1"
        shares = {(1,): 1 - (m2 + m3), (2,): 1 - (m1 + m3), (3,): m3, (1, 2): m_s - 1}
    else:
        case = "2<=m_s<=3"
        shares = {(1, 2): 1 - m3, (1, 3): 1 - m2, (2, 3): 1 - m1, (1, 2, 3): m_s - 2}

    logger.debug(f"Explicit assignment for {profile}: case {case}, sorted order {order}")
    sorted_plan = PlacementPlan(shares, profile.permuted(order))
    return sorted_plan.relabelled(order, profile)


def place_symmetric_batch(profile):
    """
    The symmetric batch placement: the optimal per-level shares spread equally
    over every subset of each level. Each database then stores m_s/N, so the
    placement respects the budgets exactly when no budget is below the mean.

    Args:
        profile (:class:`StorageProfile`): the storage system.

    Returns:
        :class:`PlacementPlan` or :class:`Infeasible`: the placement, or
            :class:`Infeasible` if m_s < 1.
    """
    beta = solve_relaxed(profile)
    if is_infeasible(beta):
        return beta
    N = profile.N
    shares = {}
    for level in beta.support:
        subsets = subsets_of_size(N, level)
        for s in subsets:
            shares[s] = beta.level(level) / comb(N, level)
    return PlacementPlan(shares, profile)


def place_optimal(profile):
    """
    An optimal placement for any profile: the explicit assignment for three
    databases and the lifted relaxed optimum otherwise.

    Returns:
        :class:`PlacementPlan` or :class:`Infeasible`.

    Raises:
        SolverError: if lifting fails, which no valid profile allows.
    """
    if profile.N == 3:
        return place_n3_table(profile)
    beta = solve_relaxed(profile)
    if is_infeasible(beta):
        return beta
    outcome = lift_beta(profile, beta)
    if isinstance(outcome, FarkasCertificate):
        raise SolverError(f"No placement with per-level shares {beta} found for {profile}")
    return outcome
