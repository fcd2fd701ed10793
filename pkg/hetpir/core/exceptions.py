"""Exceptions raised across hetpir."""

__all__ = [
    "HetpirError", "DomainError", "ContractError", "UnsupportedSizeError",
    "SolverError", "LayoutSizeError", "ProtocolError", "DecodeError",
    "ProvisioningError", "HetpirIOError"
]


class HetpirError(Exception):
    pass


class DomainError(HetpirError, ValueError):
    """An argument lies outside the domain of an operation."""
    pass


class ContractError(HetpirError):
    """A precondition agreed between two components has been broken."""
    pass


class UnsupportedSizeError(DomainError):
    """The problem is larger than a solver supports."""
    pass


class SolverError(HetpirError):
    """A solver reached an internally inconsistent state."""
    pass


class LayoutSizeError(HetpirError):
    """The message length needed by a layout exceeds the configured maximum."""

    def __init__(self, minimal_length, max_length):
        """
        Args:
            minimal_length (int): the smallest admissible message length.
            max_length (int): the configured maximum.
        """
        super().__init__(
            f"Layout needs L={minimal_length} symbols per message (at base "
            f"length 1) but the maximum is {max_length}"
        )
        self.minimal_length = minimal_length
        self.max_length = max_length


class ProtocolError(HetpirError):
    """A database was asked for content it does not hold."""
    pass


class DecodeError(HetpirError):
    """The answers do not fit the query plan they are decoded against."""

    def __init__(self, message, database=None, position=None):
        """
        Args:
            message (str): description of the inconsistency.
            database (int, optional): database of the first inconsistent sum.
            position (int, optional): position of that sum in the database's
                query.
        """
        super().__init__(message)
        self.database = database
        self.position = position


class ProvisioningError(HetpirError):
    """Placing content on a database would exceed its capacity."""

    def __init__(self, database, overflow):
        """
        Args:
            database (int): the overflowing database.
            overflow (:class:`Fraction`): symbols beyond the capacity.
        """
        super().__init__(
            f"Database {database} exceeds its capacity by {overflow} symbols"
        )
        self.database = database
        self.overflow = overflow


class HetpirIOError(HetpirError, IOError):
    pass
