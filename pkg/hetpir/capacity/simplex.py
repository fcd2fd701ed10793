"""
An exact two-phase simplex method over the rationals.

Solves linear programs in the form

    min c.x   s.t.   A_eq x = b_eq,   A_ub x <= b_ub,   x >= 0

with every tableau entry held as a :class:`Fraction`. Pivoting follows
Bland's rule (lowest-index entering column, ties in the ratio test broken by
the lowest-index basic variable), which terminates without any tolerance.

When phase one finds the constraints infeasible, the phase-one duals give a
Farkas certificate y with A_eq^T y_eq + A_ub^T y_ub >= 0, y_ub >= 0 and
b.y < 0, which proves infeasibility independently of the solver.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from hetpir.core.exceptions import DomainError, SolverError
from hetpir.core.logging import logger
from hetpir.core.rationals import as_rational

__all__ = ["SimplexStatus", "SimplexResult", "LinearProgram", "Tableau",
           "solve_linear_program"]


class SimplexStatus(Enum):
    """Enumerator for the outcome of a simplex solve."""

    optimal = "optimal"
    infeasible = "infeasible"
    unbounded = "unbounded"


@dataclass(frozen=True)
class SimplexResult(object):
    """
    Outcome of a simplex solve.

    ``x`` and ``objective`` are set when the status is optimal (``x`` also
    when only phase one was run and it succeeded); ``certificate`` is set
    when the status is infeasible and holds one multiplier per constraint,
    equality rows first.
    """

    status: SimplexStatus
    x: tuple = None
    objective: Fraction = None
    certificate: tuple = None
    pivots: int = 0


class LinearProgram(object):
    """A linear program min c.x s.t. A_eq x = b_eq, A_ub x <= b_ub, x >= 0."""

    def __init__(self, costs, eq_rows=(), eq_rhs=(), ub_rows=(), ub_rhs=()):
        """
        Args:
            costs (iter): the objective coefficients c.
            eq_rows (iter, optional): rows of A_eq. Defaults to none.
            eq_rhs (iter, optional): entries of b_eq. Defaults to none.
            ub_rows (iter, optional): rows of A_ub. Defaults to none.
            ub_rhs (iter, optional): entries of b_ub. Defaults to none.

        Raises:
            DomainError: if the dimensions do not match.
        """
        self.costs = [as_rational(c) for c in costs]
        self.eq_rows = [[as_rational(a) for a in row] for row in eq_rows]
        self.eq_rhs = [as_rational(b) for b in eq_rhs]
        self.ub_rows = [[as_rational(a) for a in row] for row in ub_rows]
        self.ub_rhs = [as_rational(b) for b in ub_rhs]

        n = len(self.costs)
        if len(self.eq_rows) != len(self.eq_rhs) or len(self.ub_rows) != len(self.ub_rhs):
            raise DomainError("Every constraint row needs exactly one right-hand side")
        if any(len(row) != n for row in self.eq_rows + self.ub_rows):
            raise DomainError(f"Every constraint row must have {n} entries")

    @property
    def num_variables(self):
        return len(self.costs)

    @property
    def num_constraints(self):
        return len(self.eq_rows) + len(self.ub_rows)


class Tableau(object):
    """
    A dense simplex tableau in canonical form with respect to its basis: the
    basic column of row i is the i-th unit vector.
    """

    def __init__(self, rows, rhs, basis):
        """
        Args:
            rows (list): the constraint rows, lists of :class:`Fraction`.
            rhs (list): the nonnegative right-hand sides.
            basis (list): the basic column of each row.
        """
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def reduced_costs(self, costs):
        """
        Computes the reduced costs c_j - c_B.B^-1 a_j of every column, and the
        objective value of the current basic solution.
        """
        reduced = list(costs)
        objective = Fraction(0)
        for row, b, basic in zip(self.rows, self.rhs, self.basis):
            cb = costs[basic]
            if cb:
                objective += cb*b
                for k, a in enumerate(row):
                    if a:
                        reduced[k] -= cb*a
        return reduced, objective

    def pivot(self, r, j):
        """
        Pivots column j into the basis in place of the basic variable of row r.

        Returns:
            tuple: the normalised pivot row and the indices of its nonzeros.
        """
        prow = self.rows[r]
        p = prow[j]
        if p != 1:
            prow = [a/p if a else a for a in prow]
            self.rows[r] = prow
            self.rhs[r] = self.rhs[r]/p
        nonzeros = [k for k, a in enumerate(prow) if a]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[j]
            if f:
                for k in nonzeros:
                    row[k] -= f*prow[k]
                self.rhs[i] -= f*self.rhs[r]
        self.basis[r] = j
        self.pivots += 1
        return prow, nonzeros

    def iterate(self, costs, allowed):
        """
        Runs simplex iterations with Bland's rule until optimal or unbounded.

        Args:
            costs (list): cost of every column of the tableau.
            allowed (list): the columns that may enter the basis, ascending.

        Returns:
            tuple: the :class:`SimplexStatus`, the final reduced costs and the
                objective value.
        """
        reduced, objective = self.reduced_costs(costs)
        while True:
            entering = next((j for j in allowed if reduced[j] < 0), None)
            if entering is None:
                return SimplexStatus.optimal, reduced, objective

            leaving, best_ratio = None, None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i]/a
                    if (leaving is None or ratio < best_ratio
                            or (ratio == best_ratio and self.basis[i] < self.basis[leaving])):
                        leaving, best_ratio = i, ratio
            if leaving is None:
                return SimplexStatus.unbounded, reduced, objective

            f = reduced[entering]
            prow, nonzeros = self.pivot(leaving, entering)
            for k in nonzeros:
                reduced[k] -= f*prow[k]
            objective += f*self.rhs[leaving]

    def drop_row(self, r):
        del self.rows[r]
        del self.rhs[r]
        del self.basis[r]


def solve_linear_program(lp, phase_two=True):
    """
    Solves a linear program exactly by the two-phase simplex method.

    Args:
        lp (:class:`LinearProgram`): the problem.
        phase_two (bool, optional): whether to optimise the objective once a
            feasible basis is found. With False only feasibility is decided
            and the returned ``x`` is the phase-one vertex. Defaults to True.

    Returns:
        :class:`SimplexResult`: the outcome.
    """
    n = lp.num_variables
    m_eq, m_ub = len(lp.eq_rows), len(lp.ub_rows)
    n_struct = n + m_ub

    # ------------------------------------------------------------------------ #
    # Standard form: slacks on the inequality rows, nonnegative right sides
    # ------------------------------------------------------------------------ #
    rows, rhs, signs, needs_artificial = [], [], [], []
    zero = Fraction(0)
    for row, b in zip(lp.eq_rows, lp.eq_rhs):
        rows.append(list(row) + [zero]*m_ub)
        rhs.append(b)
        needs_artificial.append(True)
    for i, (row, b) in enumerate(zip(lp.ub_rows, lp.ub_rhs)):
        slack = [zero]*m_ub
        slack[i] = Fraction(1)
        rows.append(list(row) + slack)
        rhs.append(b)
        needs_artificial.append(b < 0)
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
            signs.append(-1)
        else:
            signs.append(1)

    # Initial basis: slacks where possible, artificial columns elsewhere
    artificial_rows = [i for i, flag in enumerate(needs_artificial) if flag]
    n_art = len(artificial_rows)
    initial_columns = []
    for i, row in enumerate(rows):
        row.extend([zero]*n_art)
    for i in range(len(rows)):
        if needs_artificial[i]:
            column = n_struct + artificial_rows.index(i)
            rows[i][column] = Fraction(1)
        else:
            column = n + (i - m_eq)
        initial_columns.append(column)

    tableau = Tableau(rows, rhs, list(initial_columns))
    structural = list(range(n_struct))

    # ------------------------------------------------------------------------ #
    # Phase one: minimise the sum of the artificial variables
    # ------------------------------------------------------------------------ #
    if n_art > 0:
        phase_one_costs = [zero]*n_struct + [Fraction(1)]*n_art
        status, reduced, infeasibility = tableau.iterate(phase_one_costs, structural)
        if status is not SimplexStatus.optimal:
            raise SolverError("Phase one of the simplex method cannot be unbounded")
        logger.debug(f"Simplex phase one: {tableau.pivots} pivots, infeasibility {infeasibility}")

        if infeasibility > 0:
            duals = [phase_one_costs[c] - reduced[c] for c in initial_columns]
            certificate = tuple(-s*y for s, y in zip(signs, duals))
            return SimplexResult(SimplexStatus.infeasible, certificate=certificate,
                                 pivots=tableau.pivots)

        # Drive any artificial variable left in the basis (at zero) out of it
        r = 0
        while r < len(tableau.rows):
            if tableau.basis[r] >= n_struct:
                j = next((k for k in structural if tableau.rows[r][k] != 0), None)
                if j is None:
                    logger.debug("Dropping a redundant constraint row")
                    tableau.drop_row(r)
                    continue
                tableau.pivot(r, j)
            r += 1

    if not phase_two:
        return SimplexResult(SimplexStatus.optimal, x=_extract(tableau, n),
                             pivots=tableau.pivots)

    # ------------------------------------------------------------------------ #
    # Phase two: minimise the objective from the feasible basis
    # ------------------------------------------------------------------------ #
    phase_two_costs = list(lp.costs) + [zero]*(m_ub + n_art)
    status, _, objective = tableau.iterate(phase_two_costs, structural)
    logger.debug(f"Simplex finished: {status.value} after {tableau.pivots} pivots")
    if status is SimplexStatus.unbounded:
        return SimplexResult(status, pivots=tableau.pivots)
    return SimplexResult(status, x=_extract(tableau, n), objective=objective,
                         pivots=tableau.pivots)


def _extract(tableau, n):
    x = [Fraction(0)]*n
    for basic, value in zip(tableau.basis, tableau.rhs):
        if basic < n:
            x[basic] = value
    return tuple(x)
