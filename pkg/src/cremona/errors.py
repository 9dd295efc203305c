"""Exception hierarchy.

Three families, matching the command line exit codes:

* :class:`ValidationError` (exit 1) -- malformed input: parse errors,
  non-homogeneous components, mismatched contexts.
* :class:`DomainError` (exit 2) -- well-formed input on which an operation is
  undefined: composing into a base locus, specializing at a collapse point.
* :class:`InvariantViolation` (exit 3) -- an internal contract failed; this
  always indicates a bug in the kernel or an inconsistent certificate.
"""

from __future__ import annotations


class CremonaError(Exception):
    exit_code = 2


class ValidationError(CremonaError, ValueError):
    exit_code = 1


class DomainError(CremonaError, ArithmeticError):
    exit_code = 2


class InvariantViolation(CremonaError, AssertionError):
    exit_code = 3


class ParseError(ValidationError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        before = text[:position]
        self.line = before.count("\n") + 1
        self.column = position - (before.rfind("\n") + 1) + 1
        super().__init__(f"line {self.line}, column {self.column}: {message}")


class ContextMismatch(ValidationError):
    pass


class ZeroPolynomial(ValidationError):
    pass


class EmptyList(ValidationError):
    pass


class NotHomogeneous(ValidationError):
    pass


class DegreeMismatch(ValidationError):
    pass


class AllZero(ValidationError):
    pass


class SingularMatrix(ValidationError):
    pass


class NotLinear(ValidationError):
    pass


class DegenerateMobius(ValidationError):
    pass


class NotDivisible(DomainError):
    pass


class ComposedToZero(DomainError):
    def __init__(self, message: str = "composition vanishes identically", power: int | None = None):
        self.power = power
        if power is not None:
            message = f"{message} (at power {power})"
        super().__init__(message)


class CollapsePoint(DomainError):
    """The writing specializes to the zero tuple at ``value``."""

    def __init__(self, value):
        self.value = value
        super().__init__(f"writing does not pass through parameter value {value}: all components vanish")


class OutsideDomain(DomainError):
    pass


class NotInversePair(DomainError):
    pass


class NotInStar(DomainError):
    pass


class BadReductionExhausted(DomainError):
    pass


class ZeroDivisorSplit(DomainError):
    """Raised by quotient-ring arithmetic when the modulus is found to factor."""

    def __init__(self, factor, cofactor):
        self.factor = factor
        self.cofactor = cofactor
        super().__init__("modulus is reducible")


class InconsistentStarCertificate(InvariantViolation):
    pass


class SemicontinuityViolation(InvariantViolation):
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
