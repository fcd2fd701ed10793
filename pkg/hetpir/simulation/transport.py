"""
The retrieval phase as a discrete-event simulation.

Each database runs as a process reading queries from its own mailbox and
posting answers back. The user process builds every query from the layout,
the desired message and the seed alone, before any content is touched,
sends them out, waits for all the answers and decodes.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import simpy

from hetpir.core.exceptions import ProtocolError
from hetpir.core.logging import logger
from hetpir.retrieval.sun_jafar import (AnswerSet, QueryVariant, build_query,
                                        decode)

__all__ = ["TranscriptRecord", "Transcript", "run_retrieval",
           "format_transcript", "write_transcript"]


@dataclass(frozen=True, eq=False)
class TranscriptRecord(object):
    """One query sent to a database and its answer."""

    database: int
    subset: object
    query: tuple
    answer: np.ndarray

    @property
    def upload(self):
        """The number of (message, index) pairs requested."""
        return sum(len(pairs) for pairs in self.query)

    @property
    def download(self):
        """The number of symbols returned."""
        return len(self.answer)


@dataclass(frozen=True, eq=False)
class Transcript(object):
    """Every exchange of one retrieval, ordered by subset and then database."""

    theta: int
    seed: int
    length: int
    records: tuple

    @property
    def download_total(self):
        return sum(record.download for record in self.records)

    @property
    def normalized_download(self):
        return Fraction(self.download_total, self.length)


def run_retrieval(databases, plan, layout, theta, seed, variant=QueryVariant.sun_jafar):
    """
    Simulates a retrieval over the databases.

    Args:
        databases (list): the provisioned :class:`Database` objects.
        plan (:class:`PlacementPlan`): the placement the user believes in.
        layout (:class:`PartitionLayout`): its partition lengths.
        theta (int): the desired message.
        seed (int): the seed of the private permutations.
        variant (:class:`QueryVariant`, optional): the query construction.
            Defaults to the private scheme.

    Returns:
        tuple: the :class:`Transcript` and the decoded message.

    Raises:
        ProtocolError: if a database cannot answer its query.
        DecodeError: if the answers do not fit the queries.
    """
    K = plan.profile.K
    env = simpy.Environment()
    mailboxes = {db.id: simpy.Store(env) for db in databases}
    replies = simpy.Store(env)

    def serve(database):
        while True:
            query = yield mailboxes[database.id].get()
            answer = database.answer(query)
            yield replies.put((query, answer))

    def user():
        queries = {subset: build_query(subset, theta, K, layout.lengths[subset], seed, variant)
                   for subset in layout.subsets}

        sent = 0
        for subset, query in queries.items():
            for db in subset.members:
                if db not in mailboxes:
                    raise ProtocolError(f"There is no database {db} to query for {subset}")
                yield mailboxes[db].put(query.query_for(db))
                sent += 1

        answers = {subset: {} for subset in queries}
        records = []
        for _ in range(sent):
            query, answer = yield replies.get()
            answers[query.subset][query.database] = answer
            records.append(TranscriptRecord(query.database, query.subset, query.sums, answer))

        message = np.zeros(layout.length, dtype=np.uint8)
        for subset, query in queries.items():
            message[layout.partition_slice(subset)] = decode(AnswerSet(subset, answers[subset]), query)

        records.sort(key=lambda r: (r.subset.sort_key, r.database))
        return Transcript(theta, seed, layout.length, tuple(records)), message

    for database in databases:
        env.process(serve(database))
    retrieval = env.process(user())
    env.run(until=retrieval)

    transcript, message = retrieval.value
    logger.info(f"Simulated retrieval of message {theta}: downloaded/L = "
                f"{transcript.normalized_download}")
    return transcript, message


def _format_query(sums):
    return ";".join("+".join(f"{m}:{i}" for m, i in pairs) for pairs in sums)


def format_transcript(transcript):
    """
    Writes a transcript as text: a header, then one line per record with the
    fields in a fixed order.
    """
    lines = [f"theta={transcript.theta} seed={transcript.seed} L={transcript.length}"]
    for record in transcript.records:
        lines.append(
            f"db={record.database} subset={record.subset} sums={len(record.query)} "
            f"upload={record.upload} download={record.download} "
            f"query={_format_query(record.query)} answer={record.answer.tobytes().hex()}"
        )
    return "\n".join(lines) + "\n"


def write_transcript(transcript, filename):
    with open(filename, "w") as f:
        f.write(format_transcript(transcript))
