"""Exception types raised across the package."""


class ReducibleModulus(ValueError):
    pass


class UnsupportedDegree(ValueError):
    pass


class ParamsMismatch(ValueError):
    """Operands belong to differently parametrised fields."""


class DegreeTooSmall(ValueError):
    pass


class NotADivisor(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A sweep or enumeration would exceed the configured size cap."""


class InexactDivision(ArithmeticError):
    """A count that must be an exact quotient was not. Indicates a bug."""


class NegativeCount(ArithmeticError):
    """A count came out negative. Indicates a bug."""
