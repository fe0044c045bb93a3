"""Exception hierarchy.

``InputError`` covers malformed or inconsistent input (CLI exit code 2);
``GuardError`` covers size guards and violated preconditions (exit code 3).
"""


class SocineffError(Exception):
    pass


class InputError(SocineffError, ValueError):
    pass


class GuardError(SocineffError, RuntimeError):
    pass


class DuplicateName(InputError):
    pass


class EmptyAlternatives(InputError):
    pass


class RaggedMatrix(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class ModeMismatch(InputError):
    pass


class InvalidLottery(InputError):
    pass


class FactorMismatch(InputError):
    pass


class NotAPermutation(InputError):
    pass


class EmptySubset(InputError):
    pass


class UnknownAlternative(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotInjective(InputError):
    pass


class MissingName(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class TiedPreferences(InputError):
    pass


class InvalidFixture(InputError):
    pass


class UnknownVariant(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class SizeLimitExceeded(GuardError):
    pass


class GuardrailExceeded(GuardError):
    pass


class InvalidEpsilon(GuardError):
    pass


class DegenerateDimension(GuardError):
    pass


class PreconditionViolated(GuardError):
    pass


class NumericalBreakdown(GuardError):
    """Float-mode simplex lost accuracy; retry in exact mode."""


class BoundViolation(GuardError):
    pass
