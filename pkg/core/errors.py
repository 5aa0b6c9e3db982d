"""Exception hierarchy shared by every service."""


class RandlabError(Exception):
    """Base class for all library errors."""


class MalformedPrefixError(RandlabError, ValueError):
    """Input ended before a self-delimiting block was complete."""


class BudgetInfeasibleError(RandlabError, ValueError):
    """A step budget or enumeration size is outside the allowed range."""


class UnknownCodecError(RandlabError, ValueError):
    """No compressor is registered under the requested id."""


class InsufficientApproximationError(RandlabError, ValueError):
    """The Omega approximation does not yet pin the requested bits."""


class RuleViolationError(RandlabError, ValueError):
    """A Kolmogorov-Loveland rule asked for a position it already read."""


class SourceIndexError(RandlabError, ValueError):
    """Indexed read outside the source."""


class ZeroMassError(RandlabError, ValueError):
    """A cylinder has measure zero where positive mass is required."""


class NonTransitiveWitnessError(RandlabError, ValueError):
    """The node list is not a transitive subtournament."""


class LengthMismatchError(RandlabError, ValueError):
    """Encoded length does not match the declared size."""


class InvariantViolation(RandlabError, RuntimeError):
    """An internal invariant (prefix property, Kraft mass, monotonicity) broke."""
