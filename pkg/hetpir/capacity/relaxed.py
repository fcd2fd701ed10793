"""
Closed-form solution of the relaxed placement problem.

Summing the N budget constraints of the placement linear program gives the
relaxed problem

    min sum_l beta_l D_l   s.t.   sum_l beta_l = 1,   sum_l l beta_l <= m_s,

which depends on the budgets only through the sum storage m_s. Its optimum
puts all mass on level m_s when m_s is an integer, and otherwise splits it
between the two levels either side of m_s. Since the relaxed optimum can
always be lifted back to a feasible placement, it is also the optimum of the
full problem, and heterogeneous systems cost the same as homogeneous ones with
the same sum storage.
"""

from fractions import Fraction
from math import ceil

from hetpir.capacity.level_costs import level_cost
from hetpir.core.exceptions import DomainError
from hetpir.core.logging import logger
from hetpir.core.model import (BetaProfile, CapacityPoint, Infeasible,
                               StorageProfile, is_infeasible)
from hetpir.core.rationals import as_rational

__all__ = ["solve_relaxed", "relaxed_cost", "relaxed_capacity",
           "capacity_closed_form_n3", "homogeneous_capacity",
           "tradeoff_corners", "regime_label"]


def solve_relaxed(profile):
    """
    Solves the relaxed problem.

    Args:
        profile (:class:`StorageProfile`): the storage system.

    Returns:
        :class:`BetaProfile` or :class:`Infeasible`: the optimal per-level
            shares, or :class:`Infeasible` if m_s < 1.
    """
    N, m_s = profile.N, profile.sum_storage
    if m_s < 1:
        return Infeasible(m_s)
    if profile.K == 1:
        logger.warning("With a single message every level costs 1; the relaxed optimum is not unique")

    if m_s.denominator == 1:
        beta = BetaProfile.single(N, int(m_s))
    else:
        j = ceil(m_s)
        levels = [Fraction(0)]*N
        levels[j-2] = j - m_s
        levels[j-1] = m_s - (j - 1)
        beta = BetaProfile(tuple(levels))

    logger.debug(f"Relaxed optimum at m_s={m_s}: beta={beta}")
    return beta


def relaxed_cost(beta, K):
    """The relaxed objective sum_l beta_l D_l, exactly."""
    return sum((b*level_cost(l, K) for l, b in enumerate(beta.levels, start=1) if b != 0),
               Fraction(0))


def relaxed_capacity(profile):
    """
    The optimal normalised download cost of a storage system, from the relaxed
    closed form.

    Returns:
        :class:`CapacityPoint` or :class:`Infeasible`.
    """
    beta = solve_relaxed(profile)
    if is_infeasible(beta):
        return beta
    return CapacityPoint(relaxed_cost(beta, profile.K), profile.sum_storage, profile.K)


def capacity_closed_form_n3(profile):
    """
    The capacity of three databases from the explicit formulas.

    For K = 3 the two regimes have the closed forms (17 - 15 mu)/4 for
    1 <= m_s <= 2 and (85 - 33 mu)/36 for 2 <= m_s <= 3. Other values of K use
    the general relaxed solution.

    Args:
        profile (:class:`StorageProfile`): a profile with N = 3.

    Returns:
        :class:`CapacityPoint` or :class:`Infeasible`.

    Raises:
        DomainError: if the profile does not have three databases.
    """
    if profile.N != 3:
        raise DomainError(f"The three-database closed form needs N=3, not N={profile.N}")
    m_s, mu = profile.sum_storage, profile.mean_storage
    if m_s < 1:
        return Infeasible(m_s)
    if profile.K != 3:
        return relaxed_capacity(profile)
    if m_s <= 2:
        cost = (17 - 15*mu) / 4
    else:
        cost = (85 - 33*mu) / 36
    return CapacityPoint(cost, m_s, profile.K)


def homogeneous_capacity(mu, N, K):
    """
    The capacity when every database stores the same fraction mu, i.e. the
    lower convex hull of the points (t/N, D_t) evaluated at mu.

    Args:
        mu (:class:`Fraction`): the common budget, in [0, 1].
        N (int): the number of databases.
        K (int): the number of messages.

    Returns:
        :class:`CapacityPoint` or :class:`Infeasible`.

    Raises:
        DomainError: if mu lies outside [0, 1].
    """
    mu = as_rational(mu)
    if not 0 <= mu <= 1:
        raise DomainError(f"Homogeneous storage {mu} outside [0, 1]")
    return relaxed_capacity(StorageProfile.homogeneous(mu, N, K))


def tradeoff_corners(N, K):
    """
    The corner points (t/N, D_t), t = 1, ..., N, of the storage/download
    trade-off. Between corners the optimal cost is linear in mu.
    """
    return [(Fraction(t, N), level_cost(t, K)) for t in range(1, N+1)]


def regime_label(profile):
    """
    Names the segment of the trade-off curve that the sum storage falls on,
    e.g. ``1<=m_s<=2``. Sum storage on a corner is reported with the lower
    segment.
    """
    m_s, N = profile.sum_storage, profile.N
    if m_s < 1:
        return "m_s<1"
    if N == 1:
        return "m_s=1"
    j = min(N, max(2, ceil(m_s)))
    return f"{j-1}<=m_s<={j}"
