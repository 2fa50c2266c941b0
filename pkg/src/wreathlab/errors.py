"""Exception hierarchy shared by all wreathlab modules."""


class WreathlabError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(WreathlabError):
    """Group closure grew beyond the enumeration cap."""


class DegreeOverflow(WreathlabError):
    """A constructed action would exceed the degree cap."""


class NotTransitive(WreathlabError):
    """Operation requires a transitive group."""


class NotPrime(WreathlabError):
    """Argument must be a prime number."""


class NotPrimePower(WreathlabError):
    """Argument must be a prime power."""


class NotNormal(WreathlabError):
    """Subgroup is not normal in the ambient group."""


class MalformedCycle(WreathlabError):
    """Cycle notation string could not be parsed."""


class PointOutOfRange(WreathlabError):
    """Cycle notation mentions a point outside 1..degree."""


class RepeatedPoint(WreathlabError):
    """Cycle notation mentions a point twice."""


class EpsilonTooSmall(WreathlabError):
    """Search caps exhausted before reaching the requested precision."""


class DegenerateDelta(WreathlabError):
    """A derangement proportion of 0 or 1 makes the requested search trivial or impossible."""


class ExpressionError(WreathlabError):
    """Group expression failed to parse or elaborate.

    Carries the character position (for scan errors) or the AST path
    (for elaboration errors) in ``where``.
    """

    def __init__(self, message, where=None):
        super().__init__(message if where is None else f"{message} (at {where})")
        self.where = where
