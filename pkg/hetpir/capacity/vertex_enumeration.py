"""
An independent oracle for the placement linear program, by enumerating the
vertices of its feasible polytope.

In standard form the program has N+1 rows (unit mass and the N budgets, each
with a slack) and 2^N - 1 + N columns. Every vertex is the basic solution of
some choice of N+1 linearly independent columns, so the optimum is the least
objective over the bases whose basic solution is nonnegative. The basis
inverses do not depend on the budgets, so they are computed once per N and
held as integer matrices M with a determinant d, the inverse being M/d.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

import numpy as np

from hetpir.capacity.level_costs import level_cost
from hetpir.core.configuration import SolverParameters
from hetpir.core.exceptions import UnsupportedSizeError
from hetpir.core.logging import logger
from hetpir.core.model import CapacityPoint, Infeasible, all_subsets

__all__ = ["oracle_vertex_enumeration", "standard_form_columns"]


def standard_form_columns(N):
    """
    The columns of the standard-form constraint matrix: one per subset in
    canonical order, then one slack per database.

    Returns:
        list: pairs of (subset or None, column as a tuple of 0/1 entries).
    """
    columns = [(s, (1,) + tuple(1 if n in s else 0 for n in range(1, N+1)))
               for s in all_subsets(N)]
    for n in range(1, N+1):
        columns.append((None, (0,) + tuple(1 if i == n else 0 for i in range(1, N+1))))
    return columns


def _integer_inverse(matrix):
    """
    Inverts a square integer matrix by exact Gauss-Jordan elimination.

    Returns:
        tuple or None: the determinant d and the integer matrix d*A^-1, or
            None if the matrix is singular.
    """
    size = len(matrix)
    work = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(size)]
            for i, row in enumerate(matrix)]
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot is None:
            return None
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        p = work[col][col]
        det *= p
        work[col] = [a/p for a in work[col]]
        for r in range(size):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f*b for a, b in zip(work[r], work[col])]
    adjugate = [[int(a*det) for a in row[size:]] for row in work]
    return int(det), adjugate


@lru_cache(maxsize=None)
def _basis_inverses(N):
    """
    All nonsingular bases of the N-database standard form.

    Returns:
        tuple: the column indices of each basis as an integer array of shape
            (B, N+1), the determinants (B,) and the integer inverses
            (B, N+1, N+1).
    """
    columns = [column for _, column in standard_form_columns(N)]
    size = N + 1
    bases, dets, inverses = [], [], []
    for basis in combinations(range(len(columns)), size):
        matrix = [[columns[j][i] for j in basis] for i in range(size)]
        inverse = _integer_inverse(matrix)
        if inverse is not None:
            bases.append(basis)
            dets.append(inverse[0])
            inverses.append(inverse[1])
    logger.debug(f"Vertex enumeration for N={N}: {len(bases)} nonsingular bases")
    return (np.array(bases, dtype=np.int64),
            np.array(dets, dtype=np.int64),
            np.array(inverses, dtype=np.int64))


def oracle_vertex_enumeration(profile, parameters=None):
    """
    Finds the optimal download cost by enumerating every basic solution.

    Args:
        profile (:class:`StorageProfile`): the storage system.
        parameters (:class:`SolverParameters`, optional): the solver limits.
            Defaults to None, in which case the defaults are used.

    Returns:
        :class:`CapacityPoint` or :class:`Infeasible`: the least objective
            over the feasible vertices, or :class:`Infeasible` if no basic
            solution is feasible.

    Raises:
        UnsupportedSizeError: if N exceeds ``parameters.max_oracle_databases``.
    """
    if parameters is None:
        parameters = SolverParameters()
    N, K = profile.N, profile.K
    if N > parameters.max_oracle_databases:
        raise UnsupportedSizeError(
            f"Vertex enumeration supports up to {parameters.max_oracle_databases} "
            f"databases, not N={N}"
        )

    bases, dets, inverses = _basis_inverses(N)

    # Right-hand side (1, m_1, ..., m_N) scaled to arbitrary-precision integers
    rhs = [Fraction(1)] + list(profile.budgets)
    scale = lcm(*(b.denominator for b in rhs))
    scaled_rhs = np.array([int(b*scale) for b in rhs], dtype=object)

    # Basic solutions are inverse @ rhs / det, nonnegative when their signs agree with det
    numerators = inverses.astype(object) @ scaled_rhs
    signed = numerators * np.sign(dets).astype(object)[:, None]
    feasible = np.all(signed >= 0, axis=1)

    costs = [level_cost(s.size, K) for s, _ in standard_form_columns(N) if s is not None]
    costs += [Fraction(0)]*N

    best = None
    for b in np.flatnonzero(feasible):
        value = sum((costs[j]*int(x) for j, x in zip(bases[b], numerators[b]) if x != 0),
                    Fraction(0)) / (int(dets[b])*scale)
        if best is None or value < best:
            best = value
    logger.debug(f"Vertex enumeration for {profile}: {int(feasible.sum())} feasible bases")

    if best is None:
        return Infeasible(profile.sum_storage)
    return CapacityPoint(best, profile.sum_storage, K)
