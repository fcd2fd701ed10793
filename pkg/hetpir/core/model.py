"""
The domain types shared by all of hetpir.

A storage system has N databases with fractional budgets m_n (database n may
hold m_n*K*L symbols) and K messages of L symbols each. An uncoded placement
splits every message into partitions indexed by the nonempty subsets S of
databases, partition S being a fraction alpha_S of the message and replicated
on exactly the databases in S.
"""

from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering
from itertools import combinations

from hetpir.core.exceptions import ContractError, DomainError
from hetpir.core.rationals import as_rational

__all__ = [
    "SubsetId", "all_subsets", "subsets_of_size", "StorageProfile",
    "PlacementPlan", "BetaProfile", "CapacityPoint", "Infeasible",
    "is_infeasible", "Violation", "ValidationReport", "validate_placement",
    "beta_of", "sample_profile"
]


@total_ordering
@dataclass(frozen=True, eq=True)
class SubsetId(object):
    """
    A nonempty set of database indices, stored sorted so that every subset
    has exactly one identifier. Subsets order by size, then lexicographically.
    """

    members: tuple

    def __post_init__(self):
        members = tuple(sorted(int(n) for n in self.members))
        if len(members) == 0:
            raise DomainError("A subset of databases must be nonempty")
        if members[0] < 1:
            raise DomainError(f"Database indices start at 1, not {members[0]}")
        if len(set(members)) != len(members):
            raise DomainError(f"Repeated database index in {members}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *indices):
        """Builds the subset holding the given database indices."""
        return cls(tuple(indices))

    @classmethod
    def parse(cls, text):
        """Parses the comma-separated form, e.g. ``1,3``."""
        try:
            return cls(tuple(int(n) for n in text.split(",")))
        except ValueError:
            raise DomainError(f"'{text}' is not a comma-separated list of database indices")

    @property
    def size(self):
        return len(self.members)

    @property
    def sort_key(self):
        return (len(self.members), self.members)

    def within(self, N):
        """Whether every member is a database of an N-database system."""
        return self.members[-1] <= N

    def __lt__(self, other):
        if not isinstance(other, SubsetId):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, n):
        return n in self.members

    def __str__(self):
        return ",".join(str(n) for n in self.members)


@lru_cache(maxsize=None)
def subsets_of_size(N, size):
    """All subsets of {1,...,N} with the given size, lexicographically."""
    return tuple(SubsetId(c) for c in combinations(range(1, N+1), size))


@lru_cache(maxsize=32)
def all_subsets(N):
    """All 2^N - 1 nonempty subsets of {1,...,N} in canonical order."""
    return tuple(s for size in range(1, N+1) for s in subsets_of_size(N, size))


@dataclass(frozen=True)
class StorageProfile(object):
    """
    The storage budgets m = (m_1, ..., m_N) of the databases, as fractions of
    the whole library of K messages, together with the message count K.
    """

    budgets: tuple
    message_count: int

    def __post_init__(self):
        budgets = tuple(as_rational(m) for m in self.budgets)
        if len(budgets) < 1:
            raise DomainError("A storage system needs at least one database")
        for n, m in enumerate(budgets, start=1):
            if not 0 <= m <= 1:
                raise DomainError(f"Budget of database {n} is {m}, outside [0, 1]")
        if isinstance(self.message_count, bool) or int(self.message_count) != self.message_count \
                or self.message_count < 1:
            raise DomainError(f"Message count must be a positive integer, not {self.message_count}")
        object.__setattr__(self, "budgets", budgets)
        object.__setattr__(self, "message_count", int(self.message_count))

    @classmethod
    def homogeneous(cls, mu, N, K):
        """The profile in which every database has the same budget mu."""
        return cls((as_rational(mu),)*N, K)

    @property
    def N(self):
        return len(self.budgets)

    @property
    def K(self):
        return self.message_count

    @property
    def sum_storage(self):
        """The sum storage m_s."""
        return sum(self.budgets, Fraction(0))

    @property
    def mean_storage(self):
        """The average storage mu = m_s / N."""
        return self.sum_storage / self.N

    def budget(self, n):
        """The budget of database n (counting from 1)."""
        return self.budgets[n-1]

    def descending_order(self):
        """
        Database indices sorted by decreasing budget; ties keep index order.

        Returns:
            tuple: ``order`` such that ``order[0]`` has the largest budget.
        """
        return tuple(sorted(range(1, self.N+1), key=lambda n: (-self.budget(n), n)))

    def permuted(self, order):
        """The profile whose i-th database is database ``order[i-1]`` of this one."""
        return StorageProfile(tuple(self.budget(n) for n in order), self.K)

    def __str__(self):
        return f"m=({','.join(str(m) for m in self.budgets)}), K={self.K}"


@dataclass(frozen=True)
class PlacementPlan(object):
    """
    An uncoded placement: the share alpha_S of each message stored on exactly
    the databases of S. Only nonzero shares are kept; missing subsets are zero.
    """

    shares: dict
    profile: StorageProfile

    def __post_init__(self):
        normalised = {}
        for subset, share in self.shares.items():
            if not isinstance(subset, SubsetId):
                subset = SubsetId.parse(subset) if isinstance(subset, str) else SubsetId(tuple(subset))
            if not subset.within(self.profile.N):
                raise DomainError(f"Subset {subset} refers to a database beyond N={self.profile.N}")
            share = as_rational(share)
            if share != 0:
                normalised[subset] = normalised.get(subset, Fraction(0)) + share
        ordered = {s: normalised[s] for s in sorted(normalised) if normalised[s] != 0}
        object.__setattr__(self, "shares", ordered)

    def share(self, subset):
        if not isinstance(subset, SubsetId):
            subset = SubsetId(tuple(subset))
        return self.shares.get(subset, Fraction(0))

    def load(self, n):
        """The fraction of the library stored on database n."""
        return sum((a for s, a in self.shares.items() if n in s), Fraction(0))

    @property
    def total_mass(self):
        return sum(self.shares.values(), Fraction(0))

    @property
    def support(self):
        return tuple(self.shares)

    def items(self):
        return self.shares.items()

    def objective(self):
        """The normalised download cost of retrieving through this placement."""
        from hetpir.capacity.level_costs import plan_cost
        return plan_cost(self)

    def relabelled(self, order, profile):
        """
        Maps database i of this plan to database ``order[i-1]``.

        Args:
            order (tuple): the new label of each database.
            profile (:class:`StorageProfile`): the profile of the new plan.
        """
        return PlacementPlan(
            {SubsetId(tuple(order[n-1] for n in s)): a for s, a in self.shares.items()},
            profile
        )


@dataclass(frozen=True)
class BetaProfile(object):
    """The aggregated shares beta_l = sum of alpha_S over |S| = l."""

    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(as_rational(b) for b in self.levels))

    @classmethod
    def single(cls, N, level):
        """The profile with all of its mass at one level."""
        return cls(tuple(Fraction(1) if l == level else Fraction(0) for l in range(1, N+1)))

    @property
    def N(self):
        return len(self.levels)

    def level(self, l):
        return self.levels[l-1]

    @property
    def support(self):
        """The levels carrying nonzero mass."""
        return tuple(l for l, b in enumerate(self.levels, start=1) if b != 0)

    @property
    def total_mass(self):
        return sum(self.levels, Fraction(0))

    @property
    def is_lemma_structured(self):
        """Nonnegative, unit mass, at most two nonzero levels and consecutive if two."""
        support = self.support
        return (all(b >= 0 for b in self.levels)
                and self.total_mass == 1
                and 1 <= len(support) <= 2
                and (len(support) == 1 or support[1] == support[0] + 1))

    def __str__(self):
        return "(" + ",".join(str(b) for b in self.levels) + ")"


@dataclass(frozen=True)
class CapacityPoint(object):
    """An optimal normalised download cost D* = D/L at sum storage m_s."""

    download_cost: Fraction
    sum_storage: Fraction
    message_count: int

    def __post_init__(self):
        object.__setattr__(self, "download_cost", as_rational(self.download_cost))
        object.__setattr__(self, "sum_storage", as_rational(self.sum_storage))
        if not 1 <= self.download_cost <= self.message_count:
            raise ContractError(
                f"Download cost {self.download_cost} outside [1, {self.message_count}]"
            )


@dataclass(frozen=True)
class Infeasible(object):
    """The distinguished result for a storage system that cannot hold one copy of the library."""

    sum_storage: Fraction
    reason: str = "sum storage below one full copy of the library"

    def __str__(self):
        return f"infeasible (m_s={self.sum_storage}: {self.reason})"


def is_infeasible(result):
    return isinstance(result, Infeasible)


Violation = namedtuple("Violation", ["constraint", "subject", "residual"])


@dataclass(frozen=True)
class ValidationReport(object):
    """
    Result of checking a placement against the message size and storage
    constraints. ``violations`` holds one :class:`Violation` per failing
    constraint with its exact residual.
    """

    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return len(self.violations) == 0

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(
            f"{v.constraint}" + (f" at {v.subject}" if v.subject is not None else "")
            + f" (residual {v.residual})"
            for v in self.violations
        )


def validate_placement(plan):
    """
    Checks a placement against nonnegativity, the unit total mass and every
    database budget, with exact arithmetic.

    Args:
        plan (:class:`PlacementPlan`): the placement.

    Returns:
        :class:`ValidationReport`: the report, listing every violated
            constraint. This never raises.
    """
    violations = []
    for subset, share in plan.items():
        if share < 0:
            violations.append(Violation("nonnegativity", subset, share))
    excess_mass = plan.total_mass - 1
    if excess_mass != 0:
        violations.append(Violation("total_mass", None, excess_mass))
    for n in range(1, plan.profile.N+1):
        overflow = plan.load(n) - plan.profile.budget(n)
        if overflow > 0:
            violations.append(Violation("budget", n, overflow))
    return ValidationReport(tuple(violations))


def beta_of(plan):
    """Aggregates a placement into its per-level shares beta_l."""
    levels = [Fraction(0)]*plan.profile.N
    for subset, share in plan.items():
        levels[subset.size-1] += share
    return BetaProfile(tuple(levels))


def sample_profile(N, K, sum_storage, rng, max_denominator=20):
    """
    Draws a heterogeneous profile with an exactly prescribed sum storage.

    Random integer weights are water-filled: every database receives a share
    of m_s proportional to its weight, databases whose share would exceed one
    are capped at one and the remainder is spread over the rest.

    Args:
        N (int): number of databases.
        K (int): number of messages.
        sum_storage (Fraction): the sum storage m_s, in [0, N].
        rng (:class:`numpy.random.Generator`): source of the weights.
        max_denominator (int, optional): largest weight drawn. Defaults to 20.

    Returns:
        :class:`StorageProfile`: a profile with sum storage exactly m_s.
    """
    sum_storage = as_rational(sum_storage)
    if not 0 <= sum_storage <= N:
        raise DomainError(f"Sum storage {sum_storage} outside [0, {N}]")
    weights = [int(w) for w in rng.integers(1, max_denominator+1, size=N)]
    budgets = [None]*N
    free = list(range(N))
    remaining = sum_storage
    while free:
        total_weight = sum(weights[i] for i in free)
        capped = [i for i in free if remaining*weights[i] >= total_weight]
        if not capped:
            break
        for i in capped:
            budgets[i] = Fraction(1)
            remaining -= 1
            free.remove(i)
    if free:
        total_weight = sum(weights[i] for i in free)
        for i in free:
            budgets[i] = remaining*weights[i]/total_weight
    return StorageProfile(tuple(budgets), K)
