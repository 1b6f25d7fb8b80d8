class SineCoresetError(Exception):
    """Base class for data errors raised by this package."""


class DegenerateInput(SineCoresetError):
    """Every query has (numerically) zero cost, so no ratio is defined."""


class EmptyRestrictedSet(SineCoresetError):
    pass


class InvalidSensitivities(SineCoresetError):
    pass


class EmptyFeasibleSet(SineCoresetError):
    pass


class EmptyCoreset(SineCoresetError):
    pass
