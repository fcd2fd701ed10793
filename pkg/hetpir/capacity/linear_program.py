"""
The placement linear program and its exact solution.

Over the shares alpha_S of every nonempty subset S of databases, the optimal
normalised download cost is

    min sum_S alpha_S D_|S|   s.t.   sum_S alpha_S = 1,
                                      sum_{S containing n} alpha_S <= m_n,
                                      alpha_S >= 0.

Columns are the subsets in canonical order (by size, then lexicographically),
so Bland's rule and hence the returned optimal vertex are deterministic.
"""

from dataclasses import dataclass

from hetpir.capacity.level_costs import level_cost
from hetpir.capacity.relaxed import relaxed_cost, solve_relaxed
from hetpir.capacity.simplex import (LinearProgram, SimplexStatus,
                                     solve_linear_program)
from hetpir.core.configuration import SolverParameters
from hetpir.core.exceptions import SolverError, UnsupportedSizeError
from hetpir.core.logging import logger
from hetpir.core.model import (CapacityPoint, Infeasible, PlacementPlan,
                               all_subsets)

__all__ = ["LpProblem", "assemble_lp", "solve_lp"]


@dataclass(frozen=True)
class LpProblem(object):
    """
    The placement linear program of a storage profile.

    ``equality`` is the single unit-mass row and ``inequalities`` the N budget
    rows, each given as a pair of coefficient tuple and right-hand side.
    """

    profile: object
    columns: tuple
    objective: tuple
    equality: tuple
    inequalities: tuple

    def as_linear_program(self):
        """Converts to the generic form accepted by the simplex solver."""
        return LinearProgram(
            self.objective,
            eq_rows=[self.equality[0]], eq_rhs=[self.equality[1]],
            ub_rows=[row for row, _ in self.inequalities],
            ub_rhs=[rhs for _, rhs in self.inequalities]
        )


def assemble_lp(profile):
    """
    Builds the placement linear program of a profile.

    Args:
        profile (:class:`StorageProfile`): the storage system.

    Returns:
        :class:`LpProblem`: the problem over all 2^N - 1 subsets.
    """
    N, K = profile.N, profile.K
    columns = all_subsets(N)
    objective = tuple(level_cost(s.size, K) for s in columns)
    equality = (tuple(1 for _ in columns), 1)
    inequalities = tuple(
        (tuple(1 if n in s else 0 for s in columns), profile.budget(n))
        for n in range(1, N+1)
    )
    return LpProblem(profile, columns, objective, equality, inequalities)


def solve_lp(profile, parameters=None):
    """
    Solves the placement linear program exactly.

    Args:
        profile (:class:`StorageProfile`): the storage system.
        parameters (:class:`SolverParameters`, optional): the solver limits.
            Defaults to None, in which case the defaults are used.

    Returns:
        tuple or :class:`Infeasible`: the optimal :class:`PlacementPlan` (the
            first optimal vertex under Bland's rule) and its
            :class:`CapacityPoint`, or :class:`Infeasible` if the budgets
            cannot hold one copy of the library.

    Raises:
        UnsupportedSizeError: if N exceeds ``parameters.max_lp_databases``.
        SolverError: if the optimum disagrees with the relaxed closed form.
    """
    if parameters is None:
        parameters = SolverParameters()
    if profile.N > parameters.max_lp_databases:
        raise UnsupportedSizeError(
            f"The linear program supports up to {parameters.max_lp_databases} "
            f"databases, not N={profile.N}"
        )

    problem = assemble_lp(profile)
    result = solve_linear_program(problem.as_linear_program())
    logger.debug(f"Placement LP for {profile}: {result.status.value}, {result.pivots} pivots")

    if result.status is SimplexStatus.infeasible:
        logger.debug(f"Infeasibility certificate: {result.certificate}")
        return Infeasible(profile.sum_storage)
    if result.status is not SimplexStatus.optimal:
        raise SolverError(f"Placement LP for {profile} reported {result.status.value}")

    plan = PlacementPlan(dict(zip(problem.columns, result.x)), profile)
    point = CapacityPoint(result.objective, profile.sum_storage, profile.K)

    if parameters.check_relaxed_agreement:
        beta = solve_relaxed(profile)
        expected = relaxed_cost(beta, profile.K)
        if expected != point.download_cost:
            raise SolverError(
                f"LP optimum {point.download_cost} differs from relaxed optimum "
                f"{expected} for {profile}"
            )

    logger.info(f"Optimal download cost for {profile}: D*={point.download_cost}")
    return plan, point
