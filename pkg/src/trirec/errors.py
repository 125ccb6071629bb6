"""Exception hierarchy shared by all trirec modules."""


class TrirecError(Exception):
    """Base class for domain errors raised by trirec."""


class PoleAtIndex(TrirecError):
    """A coefficient denominator vanishes at a nonnegative integer index."""

    def __init__(self, index, which="denominator"):
        self.index = index
        self.which = which
        super().__init__(f"{which} vanishes at n = {index}")


class UnsupportedShape(TrirecError):
    """Degree shape of A_n, B_n matches neither supported recurrence family."""


class ComplexSubleading(TrirecError):
    """Sub-leading coefficients to be ordered are not real."""


class NotInDisc(TrirecError):
    """Evaluation point lies on or outside the disc of convergence."""


class NoConvergenceWithinBudget(TrirecError):
    """Tail bound did not reach the tolerance within the term budget."""


class TruncationMismatch(TrirecError):
    """Inner truncations cannot be matched to the requested total degree."""


class ZeroDenominator(TrirecError):
    """A Pochhammer or hypergeometric denominator factor is zero."""


class DomainError(TrirecError):
    """Argument outside the domain of a special function (e.g. gamma pole)."""


class WitnessNotFound(TrirecError):
    """No inequality witness validates on the requested scan range."""

    def __init__(self, message, first_violation=None):
        self.first_violation = first_violation
        if first_violation is not None:
            message = f"{message} (first violating n = {first_violation})"
        super().__init__(message)
