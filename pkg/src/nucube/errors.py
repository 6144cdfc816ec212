"""Exception hierarchy shared by every nucube module."""

from __future__ import annotations


class NuCubeError(Exception):
    """Base class for all library errors."""


class ParseError(NuCubeError):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += f" (expected one of: {', '.join(sorted(expected))})"
        super().__init__(detail)


class DegreeOutOfRange(NuCubeError):
    pass


class FuelExhausted(NuCubeError):
    """Raised when a reduction runs out of its step or size budget.

    ``partial`` is the last term reached, ``steps`` the number of steps taken.
    """

    def __init__(self, partial, steps: int, reason: str = "step budget"):
        self.partial = partial
        self.steps = steps
        self.reason = reason
        super().__init__(f"fuel exhausted ({reason}) after {steps} steps")


class NotErasable(NuCubeError):
    """``name`` is set when the culprit is a free type variable in an object position."""

    def __init__(self, message: str, name=None):
        self.name = name
        super().__init__(message)


# typing errors


class TypeCheckError(NuCubeError):
    pass


class DuplicateSubject(TypeCheckError):
    pass


class TypeNotASort(TypeCheckError):
    pass


class ClassMismatch(TypeCheckError):
    pass


class FsdElementIllTyped(TypeCheckError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"restriction element {index}: {message}")


class UnboundVariable(TypeCheckError):
    pass


class RuleNotInSystem(TypeCheckError):
    def __init__(self, pair, system: str):
        self.pair = pair
        super().__init__(f"rule ({pair[0]}, {pair[1]}) is not in system {system}")


class NotAFunction(TypeCheckError):
    pass


class NoType(TypeCheckError):
    """The term has no type at all (the top sort)."""


class DomainMismatch(TypeCheckError):
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class RestrictionViolated(TypeCheckError):
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class AscriptionNotConvertible(TypeCheckError):
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class AscriptionNotSorted(TypeCheckError):
    pass


class RestrictionInLambdaMode(TypeCheckError):
    pass


# encoding errors


class IndexOutOfRange(NuCubeError):
    pass


class DegreeMismatch(NuCubeError):
    pass


class FreshnessViolation(NuCubeError):
    pass


class ReplayError(NuCubeError):
    """A derivation node does not follow from its premises."""
