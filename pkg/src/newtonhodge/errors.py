"""Exception hierarchy shared by all modules."""


class NewtonHodgeError(Exception):
    """Base class for every error raised by this package."""


class DimensionTooLarge(NewtonHodgeError, ValueError):
    pass


class DegeneratePolytope(NewtonHodgeError, ValueError):
    pass


class BoxOverflow(NewtonHodgeError):
    pass


class InsufficientRange(NewtonHodgeError, ValueError):
    pass


class NotCoprime(NewtonHodgeError, ValueError):
    pass


class UnsupportedParameters(NewtonHodgeError, ValueError):
    pass


class OutOfRange(NewtonHodgeError, ValueError):
    pass


class OutsideValidityDomain(NewtonHodgeError, ValueError):
    pass


class NotPrime(NewtonHodgeError, ValueError):
    pass


class BudgetExceeded(NewtonHodgeError):
    """A computation would exceed its configured work or memory budget.

    ``required`` carries the estimated amount of work when known.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class ZeroCoordinate(NewtonHodgeError, ValueError):
    pass


class InexactDivision(NewtonHodgeError, ArithmeticError):
    pass


class PolynomialityViolation(NewtonHodgeError):
    pass


class EmptyInput(NewtonHodgeError, ValueError):
    pass


class EndpointMismatch(NewtonHodgeError):
    pass


class SingularMatrix(NewtonHodgeError, ValueError):
    pass


class DegeneratePrime(NewtonHodgeError, ValueError):
    pass


class InvalidSpec(NewtonHodgeError, ValueError):
    pass
