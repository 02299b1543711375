"""Exception hierarchy for framecurv."""


class FrameCurvError(Exception):
    """Base class for all library errors."""


class SingularMetric(FrameCurvError):
    pass


class IndexOutOfRange(FrameCurvError, IndexError):
    pass


class InvalidFrame(FrameCurvError, ValueError):
    pass


class DomainError(FrameCurvError, ValueError):
    """Argument outside the domain of a weight function (e.g. t < 0)."""


class WeightDomainError(FrameCurvError, ValueError):
    """Weights violate alpha > 0 or alpha + t*beta > 0 where a formula needs it."""


class InvalidSpec(FrameCurvError, ValueError):
    pass


class NotSymmetric(FrameCurvError, ValueError):
    pass


class DegeneratePlane(FrameCurvError, ValueError):
    pass


class NotOrthonormal(FrameCurvError, ValueError):
    pass


class ConfigError(FrameCurvError, ValueError):
    pass
