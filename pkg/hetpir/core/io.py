"""Provides hetpir's IO: the plan and message files and the output directory."""

import re
from os import makedirs, path

import numpy as np

from hetpir.core.exceptions import DomainError, HetpirIOError
from hetpir.core.logging import logger, update_logfile_location
from hetpir.core.model import PlacementPlan, StorageProfile, SubsetId
from hetpir.core.rationals import (format_rational, format_rational_list,
                                   parse_rational, parse_rational_list)

__all__ = ["IO", "format_plan", "parse_plan", "write_plan", "read_plan",
           "read_messages", "write_table"]


_header = re.compile(r"^N=(\d+)\s+K=(\d+)\s+m=(\S+)$")


def format_plan(plan):
    """
    Writes a placement as text. The header gives N, K and the budgets, then
    each nonzero share follows on its own line as ``<subset> <p>/<q>``, in
    canonical subset order.
    """
    profile = plan.profile
    lines = [f"N={profile.N} K={profile.K} m={format_rational_list(profile.budgets)}"]
    lines += [f"{subset} {format_rational(share)}" for subset, share in plan.items()]
    return "\n".join(lines) + "\n"


def parse_plan(text):
    """
    Reads a placement from the text written by :func:`format_plan`. Blank
    lines and lines starting with ``#`` are skipped.

    Raises:
        HetpirIOError: if the text is malformed.
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise HetpirIOError("Plan file is empty")

    match = _header.match(lines[0])
    if match is None:
        raise HetpirIOError(f"Plan header '{lines[0]}' is not of the form 'N=<N> K=<K> m=<m1>,...'")
    try:
        N, K = int(match.group(1)), int(match.group(2))
        budgets = parse_rational_list(match.group(3))
        if len(budgets) != N:
            raise HetpirIOError(f"Plan header lists {len(budgets)} budgets for N={N}")
        profile = StorageProfile(tuple(budgets), K)

        shares = {}
        for line in lines[1:]:
            fields = line.split()
            if len(fields) != 2:
                raise HetpirIOError(f"Plan line '{line}' is not '<subset> <share>'")
            subset = SubsetId.parse(fields[0])
            if subset in shares:
                raise HetpirIOError(f"Subset {subset} appears twice in the plan")
            shares[subset] = parse_rational(fields[1])
        return PlacementPlan(shares, profile)
    except DomainError as e:
        raise HetpirIOError(f"Malformed plan: {e}") from e


def write_plan(plan, filename):
    with open(filename, "w") as f:
        f.write(format_plan(plan))
    logger.info(f"Written placement to {filename}")


def read_plan(filename):
    try:
        with open(filename) as f:
            return parse_plan(f.read())
    except OSError as e:
        raise HetpirIOError(f"Cannot read plan file {filename}: {e}") from e


def read_messages(filename, K, length):
    """
    Reads a message library: K*L raw bytes, message k occupying bytes
    [(k-1)L, kL).

    Returns:
        :class:`numpy.ndarray`: the (K, length) uint8 array.

    Raises:
        HetpirIOError: if the file does not hold exactly K*L bytes.
    """
    try:
        data = np.fromfile(filename, dtype=np.uint8)
    except OSError as e:
        raise HetpirIOError(f"Cannot read message file {filename}: {e}") from e
    if data.size != K*length:
        raise HetpirIOError(f"Message file {filename} holds {data.size} bytes, "
                            f"not K*L = {K*length}")
    return data.reshape(K, length)


def write_table(frame, filename):
    """Writes a :class:`pandas.DataFrame` as CSV, with a header and no index."""
    frame.to_csv(filename, index=False, lineterminator="\n")
    logger.info(f"Written {len(frame)} rows to {filename}")


class IO(object):
    """Controls where a command's outputs and logfile go."""

    def __init__(self, output):
        """
        Args:
            output (:class:`OutputParameters`): holds and describes the options
                for outputting.
        """
        self.output = output
        self.dumpdir = None
        if output.dirname is not None:
            self.dumpdir = path.join("results", output.dirname)
            if not path.exists(self.dumpdir):
                makedirs(self.dumpdir)
            update_logfile_location(self.dumpdir)

    def filename(self, name):
        """
        The path at which to write an output file: inside the output
        directory, unless no directory is set or ``name`` is absolute.
        """
        if self.dumpdir is None or path.isabs(name):
            return name
        return path.join(self.dumpdir, name)
