"""Exception types raised across the package."""


class UniasymError(Exception):
    """Base class for all package errors."""


class DomainError(UniasymError, ValueError):
    """An input lies outside the domain of the requested operation."""


class BranchCutError(DomainError):
    """A real logarithm or power was requested on the branch cut."""


class RegimeError(UniasymError):
    """An evaluator was asked to work outside the regime it supports."""


class NonConvergenceError(UniasymError):
    """Series summation could not be certified within the term budget."""

    def __init__(self, message, partial_sum=None, tail_bound=None, terms=0):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.tail_bound = tail_bound
        self.terms = terms
