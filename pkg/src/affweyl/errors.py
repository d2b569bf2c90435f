"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class
so tests and the command line tool can match on type rather than message.
"""


class AffWeylError(Exception):
    """Base class for all package errors."""


class UnknownType(AffWeylError):
    """Root system label is malformed or out of the supported ranks."""


class IncomparableLattices(AffWeylError):
    """Coweights live in different lattices and neither side is rational."""


class NonTermination(AffWeylError):
    """An iterative adjustment exceeded its safety bound."""


class BudgetExceeded(AffWeylError):
    """An enumeration would exceed the configured element budget."""


class VertexNotInQuotient(AffWeylError):
    """A quantum Bruhat graph query named a coset representative outside W^J."""


class NotRegular(AffWeylError):
    """An affine simple subset contains a full affine component."""


class NotShrunken(AffWeylError):
    """A shrunken-only criterion was applied to an element with |LP(x)| > 1."""


class NotDominant(AffWeylError):
    """A coweight parameter that must be dominant is not."""


class InvalidDatum(AffWeylError):
    """A Bruhat-deciding or Deodhar datum fails its validity conditions."""


class InvalidPositivity(AffWeylError):
    """A coset length functional is negative where positivity is required."""


class UniquenessViolation(AffWeylError):
    """A minimizer that is provably unique came out non-unique."""


class IncomparableMaximum(AffWeylError):
    """A dominance-maximum was requested over an incomparable candidate set."""


class SingularSystem(AffWeylError):
    """A linear system that should be invertible is singular."""


class ParseError(AffWeylError):
    """Element or subset grammar violation; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position
