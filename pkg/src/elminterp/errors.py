"""Exception hierarchy shared by all elminterp modules."""


class ElmInterpError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ElmInterpError, ValueError):
    """Input failed a value check (non-finite data, bad ranges, empty input)."""


class DimensionError(ValidationError):
    """Shapes of the arguments are inconsistent with each other."""


class DomainError(ValidationError):
    """Point lies outside the reference interval [-1, 1]."""


class UndefinedDerivativeError(ElmInterpError, ArithmeticError):
    """Derivative requested at a kink of a non-smooth target."""


class UnsupportedRegimeError(ElmInterpError):
    """More interpolation nodes than hidden neurons (M > N)."""
