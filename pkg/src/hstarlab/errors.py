"""Exception hierarchy shared by all modules."""


class HStarError(Exception):
    """Base class for every error raised by hstarlab."""


class DegenerateSimplexError(HStarError):
    pass


class RankDeficientError(HStarError):
    pass


class NegativeCoefficientError(HStarError):
    """An h*-coefficient came out negative. Always an internal bug."""


class NonIntegerHeightError(HStarError):
    pass


class GroupTooLargeError(HStarError):
    pass


class CanonicalizationBudgetError(HStarError):
    pass


class NotPrimeError(HStarError):
    pass


class NumericalConditionError(HStarError):
    pass


class DivisibilityError(HStarError):
    pass


class NotCoprimeError(HStarError):
    pass


class RangeError(HStarError):
    pass


class InvalidSpecError(HStarError):
    pass


class DimensionMismatchError(HStarError):
    pass


class BudgetExceededError(HStarError):
    """Enumeration ran past its candidate budget.

    ``progress`` holds whatever was gathered before the cut-off so a caller
    can still report partial results.
    """

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = progress or {}


class ParseError(HStarError):
    pass


class OracleMismatchError(HStarError):
    pass


class UnknownKindError(HStarError):
    pass
