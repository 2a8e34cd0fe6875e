"""Exception hierarchy.  Every error raised by slicelab derives from SliceLabError."""


class SliceLabError(Exception):
    pass


class ZeroQuaternion(SliceLabError, ZeroDivisionError):
    pass


class NotOrthogonal(SliceLabError, ValueError):
    pass


class DegeneratePair(SliceLabError, ValueError):
    pass


class NotAUnit(SliceLabError, ValueError):
    pass


class NonpositiveRadius(SliceLabError, ValueError):
    pass


class NotInSet(SliceLabError, ValueError):
    pass


class NotOnSlice(SliceLabError, ValueError):
    pass


class OutOfDomain(SliceLabError, ValueError):
    pass


class OutOfExtension(OutOfDomain):
    pass


class InconsistentRealData(SliceLabError, ValueError):
    pass


class OnCut(OutOfDomain):
    pass


class InvalidPath(SliceLabError, ValueError):
    pass


class LiftNotContained(SliceLabError):
    def __init__(self, unit, t):
        self.unit = unit
        self.t = t
        super().__init__(f"lift at unit {tuple(unit)[1:]} leaves the domain at t={t:.6g}")


class PremiseFailed(LiftNotContained):
    pass


class UnitOutOfBand(SliceLabError, ValueError):
    pass


class ConfigParse(SliceLabError, ValueError):
    pass


class IoFailure(SliceLabError, OSError):
    pass
