"""Exception hierarchy shared by all modules."""


class StvbError(ValueError):
    """Base class for every error raised by this package."""


class MalformedHeader(StvbError):
    pass


class UnknownToken(StvbError):
    pass


class IndexOutOfRange(StvbError):
    pass


class DegreeMismatch(StvbError):
    pass


class NotInvertible(StvbError):
    pass


class IllegalParams(StvbError):
    pass


class NoMatchAtPosition(StvbError):
    pass


class IllegalGenerator(StvbError):
    pass


class PatternAbsent(StvbError):
    pass


class InvalidMorse(StvbError):
    pass


class MalformedDerivation(StvbError):
    pass
