"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Vectors or sets live over state spaces of different sizes."""


class NotSeparable(ValueError):
    """A point lies inside the set it was meant to be separated from."""


class InvalidPreference(ValueError):
    """Preference parameters violate the representation's requirements."""


class NormalizationMismatch(ValueError):
    """Two preferences compared by a theorem check use different utility scales."""


class ElicitationError(ValueError):
    """Bisection against a preference oracle could not proceed."""


class UnsupportedAudit(ValueError):
    """The requested axiom cannot be audited on the given engine."""
