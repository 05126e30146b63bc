"""Exception hierarchy shared by all modules."""


class FiltrationSymError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FiltrationSymError, ValueError):
    """A value lies outside the domain where an object is defined."""


class StructureError(FiltrationSymError, ValueError):
    """A matrix does not have the block pattern of the requested group."""


class UsageError(FiltrationSymError, ValueError):
    """Incompatible arguments, e.g. elements of different groups."""


class SingularityError(FiltrationSymError, ArithmeticError):
    """The local rotation action on a line hits a vertical slope."""

    def __init__(self, eps, a):
        self.eps = eps
        self.a = a
        super().__init__(f"singular configuration: a*sin(eps) + cos(eps) = 0 at eps={eps!r}, a={a!r}")


class InsufficientDataError(FiltrationSymError, ValueError):
    """Not enough sample points to decide a property."""


class ExpressionError(FiltrationSymError, ValueError):
    """Malformed field expression; ``position`` is a 0-based character offset."""

    kind = "expression error"

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{self.kind} at position {position}: {message}")


class LexError(ExpressionError):
    kind = "lexical error"


class ParseError(ExpressionError):
    kind = "syntax error"
