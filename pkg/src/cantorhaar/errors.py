"""Exception hierarchy shared by every module of the package."""


class CantorHaarError(ValueError):
    """Base class for all library errors."""


class InvalidRadix(CantorHaarError):
    pass


class DigitOutOfRange(CantorHaarError):
    pass


class MixedSystems(CantorHaarError):
    """Two operands live over different radix systems."""


class LevelOverflow(CantorHaarError):
    """Successor requested for the lex-maximum of a level."""


class LevelUnderflow(CantorHaarError):
    """Predecessor requested for the all-zero point of a level."""


class RankOutOfRange(CantorHaarError):
    pass


class LevelTooSmall(CantorHaarError):
    pass


class LevelTooLarge(CantorHaarError):
    pass


class EmptyInterval(CantorHaarError):
    pass


class TrivialKernel(CantorHaarError):
    pass


class TrivialBase(CantorHaarError):
    pass


class OutOfRange(CantorHaarError):
    pass


class EmptyInput(CantorHaarError):
    pass


class DepthTooSmall(CantorHaarError):
    pass


class FormatError(CantorHaarError):
    """A group, hom, tower, radix or set file could not be parsed."""
