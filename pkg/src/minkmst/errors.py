"""Exception types shared across the package."""


class MinkError(Exception):
    """Base class for library errors."""


class NormParseError(MinkError, ValueError):
    """A norm description string could not be parsed."""


class InvalidNormError(MinkError, ValueError):
    """A norm specification violates its invariants."""


class DimensionMismatchError(MinkError, ValueError):
    pass


class ZeroVectorError(MinkError, ValueError):
    pass


class DegenerateAngleError(MinkError, ValueError):
    """The apex of an angle coincides with one of its ray endpoints."""


class InvalidInstanceError(MinkError, ValueError):
    """A point set is unusable: duplicate points, ragged dimensions, too small."""


class DuplicatePointsError(InvalidInstanceError):
    pass


class UnsupportedOperationError(MinkError):
    pass


class PerturbationError(MinkError, RuntimeError):
    """The perturbation pipeline could not produce a certified tree."""
