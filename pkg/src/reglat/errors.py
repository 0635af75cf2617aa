"""Exception hierarchy shared by all modules."""


class ReglatError(Exception):
    """Base class for every error raised by this package."""


class RankError(ReglatError):
    pass


class NotSublatticeError(ReglatError):
    pass


class NotStableError(ReglatError):
    pass


class ZeroVectorError(ReglatError):
    pass


class DegenerateError(ReglatError):
    """The points do not affinely span the ambient space."""


class NotLatticePointError(ReglatError):
    pass


class FrameError(ReglatError):
    pass


class NotRootSystemError(ReglatError):
    pass


class NotRootError(ReglatError):
    pass


class UnsupportedTypeError(ReglatError):
    pass


class NotCenteredError(ReglatError):
    pass


class InconsistentScaleError(ReglatError):
    pass


class BadEntryError(ReglatError):
    pass


class UnsupportedDimensionError(ReglatError):
    pass


class BudgetExceededError(ReglatError):
    pass
