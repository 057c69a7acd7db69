"""Exception hierarchy. Every domain failure derives from FrameForgeError."""


class FrameForgeError(Exception):
    """Base class for precondition and domain failures."""


class NotHermitian(FrameForgeError):
    pass


class FailedToConverge(FrameForgeError):
    pass


class RankDeficient(FrameForgeError):
    pass


class UnsupportedSize(FrameForgeError):
    pass


class InadmissibleParameters(FrameForgeError):
    pass


class HadamardUnavailable(FrameForgeError):
    pass


class EmptyRowSet(FrameForgeError):
    pass


class BadPrime(FrameForgeError):
    pass


class NotPrime(FrameForgeError):
    pass


class ZeroIndexIncluded(FrameForgeError):
    pass


class BudgetExceeded(FrameForgeError):
    pass


class NotFullSpark(FrameForgeError):
    pass


class Disconnected(FrameForgeError):
    pass


class InconsistentCycle(FrameForgeError):
    pass


class FrameFormatError(FrameForgeError):
    pass
