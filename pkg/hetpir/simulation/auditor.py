"""
Checking that a database cannot tell which message is being retrieved.

A database sees its own list of sums. The scheme is private when, for every
database, the distribution of that list over the user's private permutations
is the same for every desired message. The auditor checks this exactly,
either over every permutation or over a sample of seeds paired across the
desired messages.
"""

from collections import Counter, namedtuple
from enum import Enum
from functools import lru_cache
from itertools import permutations
from math import factorial

import numpy as np

from hetpir.core.configuration import AuditParameters
from hetpir.core.exceptions import DomainError
from hetpir.core.logging import logger
from hetpir.retrieval.sun_jafar import QueryVariant, build_query, layered_block

__all__ = ["AuditMode", "AuditWitness", "AuditReport", "audit_privacy",
           "canonical_structure"]


class AuditMode(Enum):
    """Enumerator for the ways of auditing."""

    exhaustive = "exhaustive"
    sampled = "sampled"


# Where two desired messages were told apart
AuditWitness = namedtuple("AuditWitness", ["database", "thetas", "detail"])


class AuditReport(namedtuple("AuditReport", ["passed", "mode", "subset",
                                             "message_count", "checked", "witness"])):
    """
    The outcome of an audit. ``checked`` counts the permutation tuples (in
    exhaustive mode) or the seeded queries (in sampled mode) compared.
    """

    def __str__(self):
        unit = "permutation tuples" if self.mode is AuditMode.exhaustive else "queries"
        verdict = "PASS" if self.passed else "FAIL"
        summary = (f"audit {verdict} ({self.mode.value}): l={self.subset.size} "
                   f"K={self.message_count}, {self.checked} {unit} checked")
        if self.witness is not None:
            summary += (f"\nwitness: database {self.witness.database} distinguishes "
                        f"messages {self.witness.thetas[0]} and {self.witness.thetas[1]}: "
                        f"{self.witness.detail}")
        return summary


@lru_cache(maxsize=4)
def _all_permutations(size):
    return np.array(list(permutations(range(size))), dtype=np.uint8)


def _distribution(perms, sequence):
    """The distinct images of an index sequence under every permutation, with counts."""
    if len(sequence) == 0:
        return np.zeros((1, 0), dtype=np.uint8), np.array([len(perms)])
    images = perms[:, list(sequence)]
    return np.unique(images, axis=0, return_counts=True)


def canonical_structure(sums):
    """
    Relabels each message's symbol indices in order of first appearance, so
    that two queries get the same structure exactly when a permutation of
    each message's indices maps one to the other.
    """
    labels = {}
    canonical = []
    for pairs in sums:
        relabelled = []
        for m, i in pairs:
            seen = labels.setdefault(m, {})
            relabelled.append((m, seen.setdefault(i, len(seen))))
        canonical.append(tuple(relabelled))
    return tuple(canonical)


def _audit_exhaustive(subset, K, variant, parameters):
    ell = subset.size
    block = ell**K
    if factorial(block) > parameters.exhaustive_limit:
        raise DomainError(f"Exhaustive audit needs {block}! permutations, beyond the "
                          f"limit of {parameters.exhaustive_limit}")
    checked = factorial(block)**K
    perms = _all_permutations(block)
    recipes = {theta: layered_block(ell, K, theta, variant) for theta in range(1, K+1)}

    # A query is the message sets of its sums plus, per message, the images of
    # its index sequence; the permutations of different messages are independent
    for d, db in enumerate(subset.members):
        reference = recipes[1].sums[d]
        shape = tuple(tuple(m for m, _ in pairs) for pairs in reference)
        for theta in range(2, K+1):
            sums = recipes[theta].sums[d]
            other = tuple(tuple(m for m, _ in pairs) for pairs in sums)
            if other != shape:
                position = next((p for p, (a, b) in enumerate(zip(shape, other)) if a != b),
                                min(len(shape), len(other)))
                detail = (f"{len(shape)} against {len(other)} sums, first differing at "
                          f"position {position}")
                return AuditReport(False, AuditMode.exhaustive, subset, K, checked,
                                   AuditWitness(db, (1, theta), detail))
            for m in range(1, K+1):
                expected = [r for pairs in reference for mm, r in pairs if mm == m]
                observed = [r for pairs in sums for mm, r in pairs if mm == m]
                a, b = _distribution(perms, expected), _distribution(perms, observed)
                if not (np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])):
                    detail = f"indices of message {m} follow {expected} against {observed}"
                    return AuditReport(False, AuditMode.exhaustive, subset, K, checked,
                                       AuditWitness(db, (1, theta), detail))

    return AuditReport(True, AuditMode.exhaustive, subset, K, checked, None)


def _audit_sampled(subset, K, length, trials, variant):
    structures = {
        theta: {db: Counter() for db in subset.members} for theta in range(1, K+1)
    }
    for seed in range(trials):
        for theta in range(1, K+1):
            query = build_query(subset, theta, K, length, seed, variant)
            for db in subset.members:
                structures[theta][db][canonical_structure(query.queries[db])] += 1

    checked = trials*K
    for db in subset.members:
        reference = structures[1][db]
        for theta in range(2, K+1):
            if structures[theta][db] != reference:
                unmatched = next(iter(structures[theta][db] - reference))
                detail = f"query {unmatched[:4]}... never seen for message 1"
                return AuditReport(False, AuditMode.sampled, subset, K, checked,
                                   AuditWitness(db, (1, theta), detail))
    return AuditReport(True, AuditMode.sampled, subset, K, checked, None)


def audit_privacy(layout, subset, K, trials=None, mode=AuditMode.exhaustive,
                  variant=QueryVariant.sun_jafar, parameters=None):
    """
    Audits the queries for one partition.

    Args:
        layout (:class:`PartitionLayout`): the layout giving the partition's
            length. If None, a single block is audited.
        subset (:class:`SubsetId`): the databases replicating the partition.
        K (int): the number of messages.
        trials (int, optional): seeds per desired message in sampled mode.
            Defaults to None, in which case ``parameters.trials`` is used.
        mode (:class:`AuditMode`, optional): how to audit. Exhaustive mode
            enumerates every permutation of one block, whose blocks are
            independent. Defaults to exhaustive.
        variant (:class:`QueryVariant`, optional): the construction audited.
            Defaults to the private scheme.
        parameters (:class:`AuditParameters`, optional): the audit limits.

    Returns:
        :class:`AuditReport`: the verdict, with a witness on failure.

    Raises:
        DomainError: if an exhaustive audit would exceed
            ``parameters.exhaustive_limit`` permutations of a block.
    """
    if parameters is None:
        parameters = AuditParameters()
    if trials is None:
        trials = parameters.trials
    ell = subset.size

    if ell == 1:
        length = 1 if layout is None else layout.lengths[subset]
        queries = {theta: build_query(subset, theta, K, length, 0).queries
                   for theta in range(1, K+1)}
        passed = all(q == queries[1] for q in queries.values())
        report = AuditReport(passed, mode, subset, K, K, None)
    elif mode is AuditMode.exhaustive:
        report = _audit_exhaustive(subset, K, variant, parameters)
    else:
        length = ell**K if layout is None else layout.lengths[subset]
        report = _audit_sampled(subset, K, length, trials, variant)

    logger.info(str(report))
    return report
