"""Exception types raised by validation and numeric routines."""


class CohlabError(ValueError):
    """Base class for all cohlab errors."""


class NotHermitian(CohlabError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class NotUnitTrace(CohlabError):
    """Trace deviates from one beyond tolerance."""


class NotPSD(CohlabError):
    """Eigenvalue below the negative tolerance."""


class ConvergenceFailure(CohlabError):
    """Iterative eigensolver hit its iteration cap."""


class DimensionMismatch(CohlabError):
    """Operands have incompatible shapes or subsystem dimensions."""


class DegenerateState(CohlabError):
    """All diagonal square-root entries vanish (impossible for a valid state)."""


class IncompleteChannel(CohlabError):
    """Kraus operators do not sum to the identity."""


class InfeasiblePattern(CohlabError):
    """Random channel construction failed within the retry budget."""


class NotPure(CohlabError):
    """State purity is below the pure-state threshold."""


class BadPartition(CohlabError):
    """Partition tree leaves do not partition the subsystem index set."""


class NotIncoherentChannel(CohlabError):
    """Channel has a Kraus operator with multi-entry columns."""


class UnknownFixture(CohlabError):
    """No bundled fixture with the requested name."""


class ParseError(CohlabError):
    """Input file is not valid JSON or lacks the required fields."""
