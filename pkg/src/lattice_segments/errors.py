class LatticeSegmentsError(Exception):
    """Base class for library errors."""


class DomainError(LatticeSegmentsError, ValueError):
    """An argument lies outside the domain of an operation."""


class BudgetError(LatticeSegmentsError, RuntimeError):
    """A search would exceed its configured resource budget."""


class PrecisionError(LatticeSegmentsError, ArithmeticError):
    """Input enclosures are too wide to certify an inequality."""


class CertificationError(LatticeSegmentsError, AssertionError):
    """A constructed object failed its own certificate check."""
