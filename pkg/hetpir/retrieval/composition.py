"""
Retrieving a whole message by running the replicated-database scheme on
every partition of a placement and concatenating the results.
"""

from collections import namedtuple
from fractions import Fraction

import numpy as np

from hetpir.core.exceptions import DomainError
from hetpir.core.logging import logger
from hetpir.retrieval.sun_jafar import (AnswerSet, QueryVariant, answer_query,
                                        build_query, decode)

__all__ = ["Retrieval", "retrieve", "random_messages", "as_message_array"]


Retrieval = namedtuple("Retrieval", ["message", "download_count"])


def random_messages(K, length, seed):
    """K random messages of ``length`` symbols, as a (K, length) uint8 array."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, size=(K, length), dtype=np.uint8)


def as_message_array(messages, K, length):
    """
    Checks and converts a message library to a (K, length) uint8 array.

    Raises:
        DomainError: if the library has the wrong shape.
    """
    array = np.asarray(messages, dtype=np.uint8)
    if array.shape != (K, length):
        raise DomainError(f"Expected {K} messages of {length} symbols, got shape {array.shape}")
    return array


def retrieve(plan, layout, theta, messages, seed, variant=QueryVariant.sun_jafar):
    """
    Privately retrieves one message through a placement.

    Args:
        plan (:class:`PlacementPlan`): the placement.
        layout (:class:`PartitionLayout`): its partition lengths.
        theta (int): the desired message, in 1, ..., K.
        messages (array-like): the K messages, each of ``layout.length``
            symbols.
        seed (int): the seed of the private permutations.
        variant (:class:`QueryVariant`, optional): the query construction.
            Defaults to the private scheme.

    Returns:
        :class:`Retrieval`: the decoded message and the number of symbols
            downloaded.
    """
    K, length = plan.profile.K, layout.length
    library = as_message_array(messages, K, length)

    message = np.zeros(length, dtype=np.uint8)
    download_count = 0
    for subset in layout.subsets:
        part = layout.partition_slice(subset)
        stored = {(k, subset): library[k-1, part] for k in range(1, K+1)}
        query = build_query(subset, theta, K, layout.lengths[subset], seed, variant)
        answers = AnswerSet(subset, {db: answer_query(stored, query.query_for(db))
                                     for db in subset.members})
        message[part] = decode(answers, query)
        download_count += answers.download_count

    logger.info(f"Retrieved message {theta}: downloaded/L = {Fraction(download_count, length)}")
    return Retrieval(message, download_count)
