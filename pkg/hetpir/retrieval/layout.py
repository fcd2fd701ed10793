"""
Splitting messages into partitions.

Every message of L symbols is cut into one partition per subset S in the
placement, of alpha_S*L symbols, laid out contiguously in canonical subset
order. The layered scheme on l replicated databases works in blocks of l^K
symbols, so partitions of level l >= 2 must be whole numbers of blocks.
"""

from dataclasses import dataclass
from math import lcm

from hetpir.capacity.level_costs import level_cost
from hetpir.core.configuration import RetrievalParameters
from hetpir.core.exceptions import ContractError, DomainError, LayoutSizeError
from hetpir.core.logging import logger

__all__ = ["PartitionLayout", "make_layout", "minimal_length"]


@dataclass(frozen=True)
class PartitionLayout(object):
    """
    The partition lengths of a placement for messages of ``length`` symbols.
    ``lengths`` and ``offsets`` map each subset of the placement to its
    number of symbols and its first symbol within a message.
    """

    plan: object
    length: int
    lengths: dict
    offsets: dict

    @property
    def message_count(self):
        return self.plan.profile.K

    @property
    def subsets(self):
        """The subsets holding at least one symbol, in canonical order."""
        return tuple(s for s, n in self.lengths.items() if n > 0)

    def partition_slice(self, subset):
        """The symbols of a message that belong to the partition of ``subset``."""
        start = self.offsets[subset]
        return slice(start, start + self.lengths[subset])

    def download_count(self):
        """
        The number of symbols the composed scheme downloads: the level cost of
        each partition times its length.
        """
        K = self.message_count
        total = sum(level_cost(s.size, K)*n for s, n in self.lengths.items())
        return int(total)


def minimal_length(plan):
    """
    The smallest message length for which every partition of a placement is
    an integer number of symbols and of whole blocks.

    Returns:
        int: q * lcm{l^K : l >= 2 a level in use}, q being the least common
            denominator of the shares.
    """
    K = plan.profile.K
    q = lcm(1, *(a.denominator for _, a in plan.items()))
    blocks = lcm(1, *(s.size**K for s in plan.support if s.size >= 2))
    return q*blocks


def make_layout(plan, base_length=None, parameters=None):
    """
    Chooses the message length and the partition lengths of a placement.

    Args:
        plan (:class:`PlacementPlan`): a placement of unit total mass.
        base_length (int, optional): multiplier on the minimal length.
            Defaults to None, in which case ``parameters.base_length`` is used.
        parameters (:class:`RetrievalParameters`, optional): the retrieval
            options. Defaults to None, in which case the defaults are used.

    Returns:
        :class:`PartitionLayout`: the layout, with L = base_length times the
            minimal length.

    Raises:
        LayoutSizeError: if L exceeds ``parameters.max_length``.
    """
    if parameters is None:
        parameters = RetrievalParameters()
    if base_length is None:
        base_length = parameters.base_length
    if base_length < 1:
        raise DomainError(f"Base length must be positive, not {base_length}")
    if plan.total_mass != 1 or any(a < 0 for _, a in plan.items()):
        raise ContractError(f"Cannot lay out a placement of total mass {plan.total_mass}")

    minimum = minimal_length(plan)
    length = base_length*minimum
    if length > parameters.max_length:
        raise LayoutSizeError(minimum, parameters.max_length)

    lengths, offsets = {}, {}
    start = 0
    for subset, share in plan.items():
        n = share*length
        lengths[subset] = int(n)
        offsets[subset] = start
        start += int(n)

    logger.debug(f"Layout of L={length}: " + ", ".join(f"{s}:{n}" for s, n in lengths.items()))
    return PartitionLayout(plan, length, lengths, offsets)
