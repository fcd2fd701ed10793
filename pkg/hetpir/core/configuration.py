"""Some simple tools for configuring the solvers, the retrieval and the outputs."""

from hetpir.core.rationals import as_rational


__all__ = [
    "Configuration", "SolverParameters", "RetrievalParameters",
    "AuditParameters", "SweepParameters", "OutputParameters"
]


class Configuration(object):
    """A base configuration object, for storing options of a component."""

    #: Names of attributes whose values are held as exact rationals
    rational_attributes = ()

    def __init__(self, **kwargs):
        """
        Args:
            **kwargs: attributes and their values to be stored in the object.
        """
        for name, value in kwargs.items():
            self.__setattr__(name, value)

    def __setattr__(self, name, value):
        """
        Sets the configuration attributes.

        Attributes listed in ``rational_attributes`` are converted to exact
        :class:`Fraction` objects, so that a float such as 0.1 is held as 1/10.

        Args:
            name: the attribute's name.
            value: the value to provide to the attribute.

        Raises:
            AttributeError: if the :class:`Configuration` object does not have
                this attribute pre-defined.
        """
        if not hasattr(self, name):
            raise AttributeError("'%s' object has no attribute '%s'" % (type(self).__name__, name))

        if name in self.rational_attributes and value is not None:
            object.__setattr__(self, name, as_rational(value))
        else:
            object.__setattr__(self, name, value)

    def __repr__(self):
        options = {name: getattr(self, name) for name in dir(type(self))
                   if not name.startswith("_") and not callable(getattr(type(self), name))
                   and name != "rational_attributes"}
        return f"{type(self).__name__}({', '.join(f'{k}={v!r}' for k, v in options.items())})"


class SolverParameters(Configuration):
    """Parameters for the linear programming solvers."""

    max_lp_databases = 16      # 2^N - 1 columns stay tractable up to here
    max_oracle_databases = 4   # vertex enumeration blows up beyond this
    #: Raise if the LP optimum differs from the relaxed closed form
    check_relaxed_agreement = True


class RetrievalParameters(Configuration):
    """Parameters for laying out messages and running retrievals."""

    base_length = 1            # multiplier on the minimal admissible length
    max_length = 2**24         # symbols per message


class AuditParameters(Configuration):
    """Parameters for the privacy auditor."""

    exhaustive_limit = 10**7   # largest permutation group enumerated
    trials = 64                # seeds per message index in sampled mode


class SweepParameters(Configuration):
    """
    Describes a sweep over the sum storage: ``resolution`` grid points over
    m_s in [lower, upper] (by default [0, N]), each with ``profiles`` random
    heterogeneous profiles.
    """

    rational_attributes = ("lower", "upper")

    N = 3
    K = 3
    lower = 0                  # smallest sum storage swept
    upper = None               # largest sum storage swept, N if None
    resolution = 11
    profiles = 5
    seed = 0
    max_denominator = 20

    def __setattr__(self, name, value):
        if name == "resolution" and value < 2:
            raise ValueError(f"Sweep resolution must be at least 2, not {value}")
        if name == "profiles" and value < 1:
            raise ValueError(f"Sweep needs at least one profile per point, not {value}")
        if name in ["N", "K"] and value < 1:
            raise ValueError(f"Sweep {name} must be positive, not {value}")
        super().__setattr__(name, value)


class OutputParameters(Configuration):
    """Parameters for controlling outputting."""

    dirname = None
    log_transcript = False
