"""
Lifting an optimal per-level profile beta back to a concrete placement.

When i < m_s < i+1 the optimal placement only uses subsets of sizes i and
i+1, and every budget constraint binds. The shares of those subsets then
solve the linear system A alpha = b whose first N rows are the budgets and
whose last rows fix the mass at each level:

    sum_{S containing n} alpha_S = m_n,       n = 1, ..., N
    sum_{|S| = l} alpha_S        = beta_l,    l = i, i+1

A nonnegative solution always exists; it is found here with phase one of the
exact simplex method. If phase one fails, its duals are returned as a Farkas
certificate y (A^T y >= 0, b.y < 0), which proves the failure independently.
"""

from dataclasses import dataclass
from fractions import Fraction

from hetpir.capacity.simplex import (LinearProgram, SimplexStatus,
                                     solve_linear_program)
from hetpir.core.exceptions import ContractError, DomainError
from hetpir.core.logging import logger
from hetpir.core.model import PlacementPlan, subsets_of_size

__all__ = ["EqualitySystem", "FarkasCertificate", "assemble_system",
           "solve_system", "lift_beta", "verify_certificate"]


@dataclass(frozen=True)
class EqualitySystem(object):
    """
    The system A alpha = b over the subsets of the active levels.

    With ``budget_slack`` the N budget rows are read as A alpha <= b instead,
    which is needed when a budget cannot bind at the optimum.
    """

    profile: object
    beta: object
    columns: tuple
    matrix: tuple
    rhs: tuple
    row_labels: tuple
    budget_slack: bool = False

    @property
    def num_rows(self):
        return len(self.matrix)

    @property
    def num_columns(self):
        return len(self.columns)

    def as_linear_program(self):
        """The feasibility problem of this system, with a zero objective."""
        N = self.profile.N
        costs = [0]*self.num_columns
        if self.budget_slack:
            return LinearProgram(costs,
                                 eq_rows=self.matrix[N:], eq_rhs=self.rhs[N:],
                                 ub_rows=self.matrix[:N], ub_rhs=self.rhs[:N])
        return LinearProgram(costs, eq_rows=self.matrix, eq_rhs=self.rhs)


@dataclass(frozen=True)
class FarkasCertificate(object):
    """
    A proof that a system has no nonnegative solution: multipliers ``y``, one
    per row of ``system``, with A^T y >= 0 and b.y < 0.
    """

    y: tuple
    system: EqualitySystem = None


def assemble_system(profile, beta, budget_slack=False):
    """
    Builds the linear system whose nonnegative solutions are the placements
    with the given per-level shares that fill every budget.

    Args:
        profile (:class:`StorageProfile`): the storage system.
        beta (:class:`BetaProfile`): the per-level shares, with at most two
            nonzero levels which must be consecutive.
        budget_slack (bool, optional): whether the budget rows are upper
            bounds rather than equalities. Defaults to False.

    Returns:
        :class:`EqualitySystem`: the system. Its columns are the subsets of
            the nonzero levels in canonical order.

    Raises:
        ContractError: if beta is not structured that way, does not match the
            profile, or the budgets cannot hold one copy of the library.
    """
    N = profile.N
    if profile.sum_storage < 1:
        raise ContractError(f"No placement exists for sum storage {profile.sum_storage} < 1")
    if beta.N != N:
        raise ContractError(f"Beta profile has {beta.N} levels but there are {N} databases")
    if not beta.is_lemma_structured:
        raise ContractError(f"Beta profile {beta} needs unit mass on at most two adjacent levels")

    levels = beta.support
    columns = tuple(s for level in levels for s in subsets_of_size(N, level))
    matrix = [tuple(1 if n in s else 0 for s in columns) for n in range(1, N+1)]
    matrix += [tuple(1 if s.size == level else 0 for s in columns) for level in levels]
    rhs = tuple(profile.budgets) + tuple(beta.level(level) for level in levels)
    row_labels = tuple(f"budget {n}" for n in range(1, N+1)) + \
        tuple(f"level {level}" for level in levels)

    return EqualitySystem(profile, beta, columns, tuple(matrix), rhs, row_labels, budget_slack)


def solve_system(system):
    """
    Searches for a nonnegative solution of a system by phase one of the
    simplex method.

    Returns:
        :class:`PlacementPlan` or :class:`FarkasCertificate`: the placement
            given by the solution, or a certificate of infeasibility with one
            multiplier per row, in the system's row order.
    """
    result = solve_linear_program(system.as_linear_program(), phase_two=False)
    if result.status is SimplexStatus.optimal:
        return PlacementPlan(dict(zip(system.columns, result.x)), system.profile)

    y = result.certificate
    if system.budget_slack:
        # The solver lists equality rows first, which here are the level rows
        N = system.profile.N
        y = y[-N:] + y[:-N]
    logger.debug(f"System {system.row_labels} is infeasible, certificate {y}")
    return FarkasCertificate(tuple(y), system)


def lift_beta(profile, beta):
    """
    Lifts an optimal per-level profile to a placement.

    Tries the system with every budget binding first. When beta has a single
    level, some budgets need not bind, so the system with budget slack is
    tried next.

    Args:
        profile (:class:`StorageProfile`): the storage system.
        beta (:class:`BetaProfile`): the per-level shares, as returned by
            :func:`solve_relaxed`.

    Returns:
        :class:`PlacementPlan` or :class:`FarkasCertificate`: a placement with
            exactly these per-level shares, or a certificate that none exists.
    """
    system = assemble_system(profile, beta)
    outcome = solve_system(system)
    if isinstance(outcome, FarkasCertificate) and len(beta.support) == 1:
        logger.warning(f"Budgets cannot all bind for {profile}; retrying with budget slack")
        outcome = solve_system(assemble_system(profile, beta, budget_slack=True))

    if isinstance(outcome, FarkasCertificate):
        logger.warning(f"Lifting {beta} failed for {profile}")
    else:
        logger.debug(f"Lifted {beta} to a placement on {len(outcome.support)} subsets")
    return outcome


def verify_certificate(system, cert):
    """
    Checks a Farkas certificate against a system, exactly.

    Args:
        system (:class:`EqualitySystem`): the system claimed infeasible.
        cert (:class:`FarkasCertificate`): the certificate.

    Returns:
        bool: whether A^T y >= 0 and b.y < 0 (and y >= 0 on the budget rows
            of a system with budget slack).

    Raises:
        DomainError: if the certificate has the wrong length.
    """
    y = cert.y
    if len(y) != system.num_rows:
        raise DomainError(f"Certificate has {len(y)} entries for {system.num_rows} rows")

    if system.budget_slack and any(v < 0 for v in y[:system.profile.N]):
        return False
    for j in range(system.num_columns):
        if sum((row[j]*v for row, v in zip(system.matrix, y)), Fraction(0)) < 0:
            return False
    return sum((b*v for b, v in zip(system.rhs, y)), Fraction(0)) < 0
