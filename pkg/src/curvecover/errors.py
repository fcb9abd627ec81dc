"""Exception hierarchy.

Every domain error carries a stable ``code`` so the CLI can emit
``{"error": code, "detail": ...}`` without a lookup table.
"""


class DomainError(Exception):
    code = "DomainError"

    def __init__(self, detail="", **data):
        super().__init__(detail)
        self.detail = detail
        self.data = data


class NotPrime(DomainError):
    code = "NotPrime"


class NotPrimePower(DomainError):
    code = "NotPrimePower"


class BudgetExceeded(DomainError):
    code = "BudgetExceeded"


class FieldDivisionByZero(DomainError, ZeroDivisionError):
    code = "DivisionByZero"


class CtxMismatch(DomainError):
    code = "CtxMismatch"


class SingularModel(DomainError):
    code = "SingularModel"


class UnsupportedShape(DomainError):
    code = "UnsupportedShape"


class NonIntegerResult(DomainError):
    code = "NonIntegerResult"


class NoSuchPlace(DomainError):
    code = "NoSuchPlace"


class NonGenericPlace(DomainError):
    code = "NonGenericPlace"


class CountMismatch(DomainError):
    code = "CountMismatch"


class GenusTooSmall(DomainError):
    code = "GenusTooSmall"


class SearchBudgetExceeded(DomainError):
    code = "SearchBudgetExceeded"


class NoCollision(DomainError):
    code = "NoCollision"


class NoSplittingPair(DomainError):
    code = "NoSplittingPair"


class NoRationalPoints(DomainError):
    code = "NoRationalPoints"


class InconsistentRamification(DomainError):
    code = "InconsistentRamification"


class TooFewEntries(DomainError):
    code = "TooFewEntries"


class HypothesisNotMet(DomainError):
    code = "HypothesisNotMet"


class ParseError(DomainError):
    code = "ParseError"
