"""
The databases of the simulated storage system and the placement phase that
fills them.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from hetpir.core.exceptions import ProtocolError, ProvisioningError
from hetpir.core.logging import logger
from hetpir.retrieval.composition import as_message_array
from hetpir.retrieval.sun_jafar import answer_query

__all__ = ["Database", "provision"]


@dataclass
class Database(object):
    """
    A database holding the partitions of every message whose subset contains
    it. ``capacity`` is its budget in symbols, m_n*K*L; ``contents`` maps
    (message, subset) to the partition's symbols.
    """

    id: int
    capacity: Fraction
    contents: dict = field(default_factory=dict)

    @property
    def stored_symbols(self):
        return sum(len(symbols) for symbols in self.contents.values())

    def answer(self, query):
        """
        Answers a query addressed to this database.

        Raises:
            ProtocolError: if the query is addressed elsewhere or refers to
                content this database does not hold.
        """
        if query.database != self.id:
            raise ProtocolError(f"Database {self.id} received a query for database {query.database}")
        return answer_query(self.contents, query)


def provision(plan, layout, messages):
    """
    Stores every message's partitions on the databases of their subsets.

    Args:
        plan (:class:`PlacementPlan`): the placement.
        layout (:class:`PartitionLayout`): its partition lengths.
        messages (array-like): the K messages of ``layout.length`` symbols.

    Returns:
        list: the N :class:`Database` objects, in index order.

    Raises:
        ProvisioningError: if a database's partitions exceed its capacity.
    """
    profile = plan.profile
    K, length = profile.K, layout.length
    library = as_message_array(messages, K, length)

    databases = [Database(n, profile.budget(n)*K*length) for n in range(1, profile.N+1)]
    for subset in layout.subsets:
        part = layout.partition_slice(subset)
        for n in subset.members:
            for k in range(1, K+1):
                databases[n-1].contents[(k, subset)] = library[k-1, part].copy()

    for database in databases:
        overflow = database.stored_symbols - database.capacity
        if overflow > 0:
            raise ProvisioningError(database.id, overflow)
        logger.debug(f"Database {database.id} stores {database.stored_symbols} of "
                     f"{database.capacity} symbols")
    return databases
