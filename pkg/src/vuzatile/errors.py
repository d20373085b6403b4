"""Exception hierarchy shared by every module."""


class TilingError(Exception):
    """Base class for all errors raised by vuzatile."""


class InvalidArgumentError(TilingError, ValueError):
    pass


class InvalidPeriodError(InvalidArgumentError):
    pass


class NonInvertibleMultiplierError(InvalidArgumentError):
    pass


class UnanchoredRhythmError(InvalidArgumentError):
    """The rhythm must contain 0."""


class NonDivisibleCardinalityError(InvalidArgumentError):
    """|A| does not divide n, so A cannot tile Z_n."""


class InvalidDivisorError(InvalidArgumentError):
    pass


class InvalidCutError(InvalidArgumentError):
    pass


class InvalidPairError(InvalidArgumentError):
    pass


class OracleSizeError(TilingError):
    """The exhaustive oracle refuses periods above its size guard."""
