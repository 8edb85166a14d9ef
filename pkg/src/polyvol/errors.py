"""Exception hierarchy shared by all modules."""


class PolyvolError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(PolyvolError, ValueError):
    pass


class SingularMatrixError(PolyvolError, ValueError):
    pass


class RankDeficientError(PolyvolError, ValueError):
    pass


class InvalidPolytopeError(PolyvolError, ValueError):
    pass


class PositiveVectorError(InvalidPolytopeError):
    """The cone {x >= 0 : Bx = 0} has no strictly positive vector."""


class NonSimpleError(PolyvolError, ValueError):
    pass


class InadmissibleBetaError(PolyvolError, ValueError):
    pass


class EnumerationBudgetError(PolyvolError, RuntimeError):
    pass


class DegenerateInputError(PolyvolError, ValueError):
    pass


class PeriodError(PolyvolError, RuntimeError):
    pass
