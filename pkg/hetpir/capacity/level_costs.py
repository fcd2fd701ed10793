"""
The download cost of privately retrieving from l replicated databases.

With K messages stored on l databases that all hold the same content, the
best normalised download cost is 1 + 1/l + ... + 1/l^(K-1). Partitions
replicated on l databases are retrieved at exactly this cost, so these are
the coefficients of the placement linear program.
"""

from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from hetpir.core.exceptions import DomainError

__all__ = ["LevelCost", "level_cost", "level_costs", "plan_cost"]


LevelCost = namedtuple("LevelCost", ["level", "cost"])


@lru_cache(maxsize=None)
def level_cost(level, K):
    """
    Returns the optimal normalised download cost from ``level`` replicated
    databases holding K messages.

    Args:
        level (int): the replication level l, at least 1.
        K (int): the number of messages, at least 1.

    Returns:
        :class:`Fraction`: 1 + 1/l + ... + 1/l^(K-1), exactly.

    Raises:
        DomainError: if level < 1 or K < 1.
    """
    if level < 1 or K < 1:
        raise DomainError(f"Level cost needs level >= 1 and K >= 1, not level={level}, K={K}")
    return sum((Fraction(1, level**i) for i in range(K)), Fraction(0))


def level_costs(N, K):
    """The level costs of every replication level 1, ..., N."""
    return [LevelCost(l, level_cost(l, K)) for l in range(1, N+1)]


def plan_cost(plan):
    """
    The normalised download cost of retrieving through a placement, i.e. the
    placement's objective in the linear program: the sum of alpha_S times the
    level cost of |S|.
    """
    K = plan.profile.K
    return sum((share*level_cost(subset.size, K) for subset, share in plan.items()),
               Fraction(0))
