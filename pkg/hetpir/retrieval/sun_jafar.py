"""
Private retrieval from l databases that all store the same K messages.

The scheme works in blocks of l^K symbols per message. Within a block the
user asks every database for sums of symbols, in K rounds:

* round 1 asks each database for one fresh symbol of every message;
* round k asks each database, for every set of k messages containing the
  desired message theta, for one fresh symbol of theta added to each
  (k-1)-sum of the other messages that some other database returned in round
  k-1, and, for every set of k messages without theta, for the same number
  of sums of k fresh symbols.

Every database therefore sees the same number of sums over every set of
messages whatever theta is, and the private random permutation of each
message's symbol indices hides which symbols are fresh. The other messages'
parts of the desired sums are known from the other databases, so each
desired sum yields one new symbol of theta: l^K of them per block, against
(l^K - 1)/(l - 1) sums downloaded from each database.

With a single database the only private scheme is to download everything.
"""

from collections import namedtuple
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from hetpir.core.exceptions import (ContractError, DecodeError, DomainError,
                                    ProtocolError)
from hetpir.core.logging import logger

__all__ = ["QueryVariant", "BlockRecipe", "DecodeStep", "layered_block",
           "QueryPlan", "DatabaseQuery", "AnswerSet", "build_query",
           "answer_query", "decode", "query_rng"]


class QueryVariant(Enum):
    """Enumerator for the query constructions."""

    sun_jafar = "sun_jafar"
    #: Omits the undesired singletons of round 1; not private, only audited
    skip_interference_singletons = "skip_interference_singletons"


# How to recover one symbol of the desired message: the answer at (database,
# position), minus the side information at (side_database, side_position)
DecodeStep = namedtuple(
    "DecodeStep",
    ["symbol", "database", "position", "side_database", "side_position"]
)


@dataclass(frozen=True)
class BlockRecipe(object):
    """
    The unpermuted queries of one block. ``sums[d]`` lists the sums asked of
    the d-th database (counting from 0), each a tuple of (message, raw index)
    pairs sorted by message; ``steps`` decode the desired symbols, with
    databases also counted from 0.
    """

    ell: int
    message_count: int
    theta: int
    sums: tuple
    steps: tuple

    @property
    def block_length(self):
        return self.ell**self.message_count


def layered_block(ell, K, theta, variant=QueryVariant.sun_jafar):
    """
    Builds the layered queries of one block, before permutation.

    Args:
        ell (int): the number of replicated databases, at least 2.
        K (int): the number of messages.
        theta (int): the desired message, in 1, ..., K.
        variant (:class:`QueryVariant`, optional): the construction.
            Defaults to the private scheme.

    Returns:
        :class:`BlockRecipe`: the raw sums and decoding steps.
    """
    if ell < 2:
        raise DomainError(f"The layered scheme needs at least 2 databases, not {ell}")
    if not 1 <= theta <= K:
        raise DomainError(f"Desired message {theta} outside 1, ..., {K}")

    fresh = {m: 0 for m in range(1, K+1)}

    def draw(m):
        index = fresh[m]
        fresh[m] += 1
        return index

    sums = [[] for _ in range(ell)]
    steps = []
    # interference[d][k][T]: positions of database d's round-k sums over T, theta not in T
    interference = [[{} for _ in range(K+1)] for _ in range(ell)]

    for k in range(1, K+1):
        for d in range(ell):
            for messages in combinations(range(1, K+1), k):
                if theta in messages:
                    if k == 1:
                        steps.append(DecodeStep(draw(theta), d, len(sums[d]), None, None))
                        sums[d].append(((theta, steps[-1].symbol),))
                        continue
                    others = tuple(m for m in messages if m != theta)
                    for d_side in range(ell):
                        if d_side == d:
                            continue
                        for p_side in interference[d_side][k-1].get(others, []):
                            symbol = draw(theta)
                            pairs = sums[d_side][p_side] + ((theta, symbol),)
                            steps.append(DecodeStep(symbol, d, len(sums[d]), d_side, p_side))
                            sums[d].append(tuple(sorted(pairs)))
                else:
                    if k == 1 and variant is QueryVariant.skip_interference_singletons:
                        continue
                    positions = interference[d][k].setdefault(messages, [])
                    for _ in range((ell - 1)**(k - 1)):
                        positions.append(len(sums[d]))
                        sums[d].append(tuple((m, draw(m)) for m in messages))

    return BlockRecipe(ell, K, theta, tuple(tuple(s) for s in sums), tuple(steps))


def query_rng(subset, length, seed):
    """
    The generator of a query's private permutations. It depends on the seed,
    the partition and its length but never on the desired message.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, length, *subset.members]))


@dataclass(frozen=True)
class DatabaseQuery(object):
    """The part of a query sent to one database: the sums it must return."""

    subset: object
    database: int
    sums: tuple

    def __len__(self):
        return len(self.sums)


@dataclass(frozen=True)
class QueryPlan(object):
    """
    A query for the partition of ``subset``. ``queries`` holds the sums sent
    to each database; ``steps`` stay with the user.
    """

    subset: object
    theta: int
    message_count: int
    length: int
    queries: dict
    steps: tuple
    variant: QueryVariant = QueryVariant.sun_jafar

    def query_for(self, database):
        """The :class:`DatabaseQuery` sent to ``database``."""
        return DatabaseQuery(self.subset, database, self.queries[database])

    @property
    def download_count(self):
        return sum(len(sums) for sums in self.queries.values())


@dataclass(frozen=True)
class AnswerSet(object):
    """The answers of the databases of a subset, one uint8 array per database."""

    subset: object
    answers: dict

    @property
    def download_count(self):
        return sum(len(a) for a in self.answers.values())


def build_query(subset, theta, K, length, seed, variant=QueryVariant.sun_jafar):
    """
    Builds the private query for one partition.

    Args:
        subset (:class:`SubsetId`): the databases replicating the partition.
        theta (int): the desired message, in 1, ..., K.
        K (int): the number of messages.
        length (int): the number of symbols per message in the partition.
        seed (int): the seed of the private permutations.
        variant (:class:`QueryVariant`, optional): the construction.
            Defaults to the private scheme.

    Returns:
        :class:`QueryPlan`: the query.

    Raises:
        ContractError: if the length is not a whole number of blocks.
    """
    if not 1 <= theta <= K:
        raise DomainError(f"Desired message {theta} outside 1, ..., {K}")
    ell = subset.size
    members = subset.members

    if ell == 1:
        database = members[0]
        sums = tuple(((m, i),) for m in range(1, K+1) for i in range(length))
        steps = tuple(DecodeStep(i, database, (theta-1)*length + i, None, None)
                      for i in range(length))
        return QueryPlan(subset, theta, K, length, {database: sums}, steps, variant)

    block = ell**K
    if length % block != 0:
        raise ContractError(f"Partition of {length} symbols on {ell} databases "
                            f"is not a multiple of {ell}^{K}")

    recipe = layered_block(ell, K, theta, variant)
    per_database = [len(s) for s in recipe.sums]
    rng = query_rng(subset, length, seed)

    queries = {db: [] for db in members}
    steps = []
    for b in range(length // block):
        perm = {m: b*block + rng.permutation(block) for m in range(1, K+1)}
        for d, db in enumerate(members):
            queries[db].extend(
                tuple((m, int(perm[m][r])) for m, r in raw) for raw in recipe.sums[d]
            )
        for step in recipe.steps:
            side_database, side_position = None, None
            if step.side_database is not None:
                side_database = members[step.side_database]
                side_position = b*per_database[step.side_database] + step.side_position
            steps.append(DecodeStep(int(perm[theta][step.symbol]), members[step.database],
                                    b*per_database[step.database] + step.position,
                                    side_database, side_position))

    logger.debug(f"Query on {subset} for message {theta}: {length // block} blocks, "
                 f"{per_database[0]} sums per database per block")
    return QueryPlan(subset, theta, K, length, {db: tuple(q) for db, q in queries.items()},
                     tuple(steps), variant)


def answer_query(stored, query):
    """
    Answers a query from a database's contents.

    Args:
        stored (dict): the partitions held by the database, keyed by
            (message, subset), each a uint8 array.
        query (:class:`DatabaseQuery`): the sums to return.

    Returns:
        :class:`numpy.ndarray`: one uint8 symbol per sum, the XOR of the
            requested symbols.

    Raises:
        ProtocolError: if a sum refers to a partition the database does not
            hold, or to a symbol outside it.
    """
    answer = np.zeros(len(query.sums), dtype=np.uint8)
    for position, pairs in enumerate(query.sums):
        value = np.uint8(0)
        for message, index in pairs:
            partition = stored.get((message, query.subset))
            if partition is None:
                raise ProtocolError(f"Database {query.database} holds no partition "
                                    f"{query.subset} of message {message}")
            if not 0 <= index < len(partition):
                raise ProtocolError(f"Symbol {index} outside partition {query.subset} "
                                    f"of message {message} ({len(partition)} symbols)")
            value ^= partition[index]
        answer[position] = value
    return answer


def decode(answers, plan):
    """
    Recovers the desired partition from the answers.

    Every sum is downloaded once and XOR answers carry no redundancy, so the
    answers can only be checked against the shape of the query: one answer
    per database of the partition and one symbol per sum.

    Args:
        answers (:class:`AnswerSet`): the answers of every database.
        plan (:class:`QueryPlan`): the query they answer.

    Returns:
        :class:`numpy.ndarray`: the ``plan.length`` symbols of the desired
            message in the partition.

    Raises:
        DecodeError: if an answer is missing or does not have one symbol per
            sum; the error names the first sum that cannot be matched.
    """
    if plan.variant is not QueryVariant.sun_jafar:
        raise ContractError(f"Queries of the {plan.variant.value} variant cannot be decoded")

    for db, sums in plan.queries.items():
        answer = answers.answers.get(db)
        if answer is None:
            raise DecodeError(f"No answer from database {db}", database=db, position=0)
        if len(answer) != len(sums):
            position = min(len(answer), len(sums))
            raise DecodeError(f"Database {db} returned {len(answer)} symbols for "
                              f"{len(sums)} sums", database=db, position=position)

    message = np.zeros(plan.length, dtype=np.uint8)
    for step in plan.steps:
        value = answers.answers[step.database][step.position]
        if step.side_database is not None:
            value ^= answers.answers[step.side_database][step.side_position]
        message[step.symbol] = value
    return message
