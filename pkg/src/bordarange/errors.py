"""Exception types shared across the package."""


class BordaRangeError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidPattern(BordaRangeError):
    """A level pattern contains a size below 1 or is otherwise malformed."""


class OddLevelPresent(BordaRangeError):
    """Power decomposition requested for a pattern with an odd level size."""


class VoterCountMismatch(BordaRangeError):
    """Two profiles with different voter counts cannot be catenated."""


class ParityError(BordaRangeError):
    """An operation requiring odd voter counts received an even one."""


class ConstructionError(BordaRangeError):
    """A witness builder produced a profile that failed self-verification.

    This always signals a bug in a construction table, never a legitimate
    negative answer; builders do not fall back to search.
    """


class NotInTable(BordaRangeError):
    """Requested pattern is not one of the shipped fixture profiles."""


class NotDecomposable(BordaRangeError):
    """Pattern does not meet the preconditions of the block planner."""


class NotInRangeError(BordaRangeError):
    """Pattern is provably outside the Borda range for every odd voter count."""


class UnsupportedConstruction(BordaRangeError):
    """Pattern may be in range but no constructive recipe is implemented."""


class BudgetExceeded(BordaRangeError):
    """Requested enumeration or search exceeds the configured budget."""
