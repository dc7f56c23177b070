class GorsimpError(Exception):
    """Base class for every error raised by this package."""


class LengthMismatch(GorsimpError, ValueError):
    pass


class HeightError(GorsimpError, ValueError):
    """A vector or group element has a non-integer coordinate sum."""


class GroupTooLarge(GorsimpError):
    pass


class CanonicalKeyUndefined(GorsimpError):
    """Raised for groups whose element heights are not pairwise distinct."""


class NotOfType(GorsimpError, ValueError):
    """The group does not have the claimed type (v, k)."""


class ZeroCoordinate(GorsimpError, ValueError):
    """The group has a coordinate that vanishes on every element (lattice pyramid)."""


class InadmissibleElement(GorsimpError, ValueError):
    pass


class InvalidClassData(GorsimpError, ValueError):
    pass


class InternalConsistencyError(GorsimpError, AssertionError):
    """A structural guarantee failed; this indicates a bug, not bad input."""


class DegenerateSimplex(GorsimpError, ValueError):
    pass
