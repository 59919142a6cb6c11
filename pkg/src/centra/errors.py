"""Exception types shared across the library."""

from __future__ import annotations


class CentraError(Exception):
    """Base class for every error raised by centra."""


class NotAGroup(CentraError):
    """A multiplication table fails one of the group axioms."""


class NotNormal(CentraError):
    pass


class NotProper(CentraError):
    pass


class OutOfRange(CentraError):
    pass


class NotPrime(OutOfRange):
    pass


class OrderCapExceeded(OutOfRange):
    pass


class ParseError(CentraError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class NotAPermutation(ParseError):
    pass


class AbelianInput(CentraError):
    """Raised by predicates that are only defined for non-abelian groups."""


class NotPGroup(CentraError):
    """Raised by predicates that are only defined for groups of prime power order."""


class NotApplicable(CentraError):
    """A counting formula's hypotheses are not met; ``reason`` names the failed one."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class HypothesisNotMet(NotApplicable):
    pass


class SearchBudgetExceeded(CentraError):
    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} nodes exhausted")
        self.budget = budget
