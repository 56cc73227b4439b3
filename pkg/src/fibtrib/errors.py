"""Exception hierarchy shared by all modules."""


class FibTribError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FibTribError, ValueError):
    """Function evaluated outside its domain (e.g. log of a non-positive enclosure)."""


class InsufficientPrecision(FibTribError, ArithmeticError):
    """The enclosure is too wide to decide something; more bits may help."""


class DivisorStraddlesZero(InsufficientPrecision):
    pass


class TooWide(InsufficientPrecision):
    pass


class PrecisionExhausted(FibTribError, ArithmeticError):
    """Raised when the maximum precision is reached without success.

    ``enclosure`` holds the last (best) enclosure achieved, when there is one.
    """

    def __init__(self, message, enclosure=None, bits=None):
        super().__init__(message)
        self.enclosure = enclosure
        self.bits = bits


class NoSignChange(FibTribError, ValueError):
    pass


class MultipleRootsSuspected(FibTribError, ValueError):
    pass


class IndexOutOfRange(FibTribError, IndexError):
    pass


class HypothesisViolated(FibTribError, ValueError):
    """Preconditions of the reduction lemma do not hold (q <= 6M, A <= 0, B <= 1)."""


class CertificationFailed(FibTribError):
    """A claimed numeric inequality could not be certified."""


class CoefficientTooLarge(CertificationFailed):
    pass


class BisectionFailed(CertificationFailed):
    pass


class ConfigError(FibTribError, ValueError):
    pass
