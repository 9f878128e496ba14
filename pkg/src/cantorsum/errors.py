"""Exception hierarchy shared by all cantorsum modules."""


class CantorSumError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CantorSumError, ValueError):
    pass


class NotTriadic(CantorSumError, ValueError):
    """A rational whose denominator is not a power of 3 was used where one is required."""


class DigitUnavailable(CantorSumError):
    pass


class NotInGap(CantorSumError, ValueError):
    """The value is a member of the Cantor set, so it lies in no removed gap."""


class StageTooLarge(CantorSumError, ValueError):
    pass


class NegativeEndpoint(CantorSumError, ValueError):
    pass


class OutOfRange(CantorSumError, ValueError):
    pass


class TargetOutsideInterval(CantorSumError, ValueError):
    pass


class UnsupportedDomain(CantorSumError, ValueError):
    pass


class UnsupportedKind(CantorSumError, ValueError):
    pass


class DecompositionFailure(CantorSumError):
    """Raised when the greedy loop cannot finish; carries the partial certificate."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Stalled(DecompositionFailure):
    pass


class IterationCap(DecompositionFailure):
    pass


class BudgetExceeded(CantorSumError):
    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class CertificateFormatError(CantorSumError, ValueError):
    pass
