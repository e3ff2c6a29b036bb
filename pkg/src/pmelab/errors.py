"""Exception types shared across the package."""

from __future__ import annotations


class PmeLabError(Exception):
    """Base class for all package errors."""


class DomainBoundary(PmeLabError, ValueError):
    """A position lies on or outside the boundary of (-R, R)."""


class NegativeExponent(PmeLabError, ValueError):
    pass


class InvalidDensity(PmeLabError, ValueError):
    """A user-supplied weight violates positivity, symmetry or the collar sandwich."""


class TimeOutOfDomain(PmeLabError, ValueError):
    pass


class OnBranchInterface(PmeLabError, ValueError):
    """A derivative was requested exactly on a profile interface without a side."""


class BracketNonpositive(PmeLabError, ValueError):
    pass


class StencilCrossesInterface(PmeLabError, ValueError):
    pass


class EmptyRegion(PmeLabError, ValueError):
    pass


class KBoundViolated(PmeLabError, ValueError):
    """The density sandwich ratio is too wide for the fast-regime supersolution."""


class EpsilonTooLarge(PmeLabError, ValueError):
    pass


class PeqMUnsupported(PmeLabError, ValueError):
    pass


class NoFeasiblePoint(PmeLabError):
    """A parameter search was exhausted; ``report`` holds the tightest attempt."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InvalidDatum(PmeLabError, ValueError):
    pass


class NewtonDivergence(PmeLabError):
    """Time step collapsed without a reaction-driven runaway."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class MonotonicityViolation(PmeLabError):
    def __init__(self, message: str, location=None):
        super().__init__(message)
        self.location = location


class WindowMismatch(PmeLabError, ValueError):
    pass


class ConfigInvalid(PmeLabError, ValueError):
    """Configuration error; ``path`` names the offending field (e.g. ``.exponents.m``)."""

    def __init__(self, path: str, message: str = ""):
        super().__init__(f"{path}: {message}" if message else path)
        self.path = path
