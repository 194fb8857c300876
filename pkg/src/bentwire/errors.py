"""Exception hierarchy shared by all bentwire modules."""


class BentWireError(Exception):
    """Base class for every error raised by this package."""


class PoleError(BentWireError, ArithmeticError):
    """Gamma function evaluated at a non-positive integer."""


class NonConvergence(BentWireError, ArithmeticError):
    """A series failed to meet its stopping rule within the term budget."""


class DomainError(BentWireError, ValueError):
    """Argument outside the mathematical domain of a function."""


class SpecFunDomain(DomainError):
    """Argument outside the validity range of the series implementation."""


class SingularJunction(BentWireError, ArithmeticError):
    """The junction matching system has no unique solution at this k."""


class DegenerateCoefficient(BentWireError, ArithmeticError):
    """Effective coefficient a vanishes, so d = (1 + bc)/a is undefined."""


class NoBoundState(BentWireError):
    """No bound state was found in the search window."""


class StepTooCoarse(BentWireError, ArithmeticError):
    """RK4 determinant drift exceeded the allowed budget."""
