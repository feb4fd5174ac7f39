"""Exception and warning types shared across the package."""


class AlphaGeoError(Exception):
    """Base class for all package errors."""


class DomainError(AlphaGeoError, ValueError):
    """Input outside the domain of a measure, family or stencil."""


class PriorError(AlphaGeoError, ValueError):
    """Prior density is non-positive or otherwise unusable."""


class ConfigError(AlphaGeoError, ValueError):
    """Invalid family/prior/experiment specification."""


class SingularInformation(AlphaGeoError, ArithmeticError):
    """Information matrix too ill-conditioned to invert."""


class NumericalWarning(UserWarning):
    """Finite-difference stencil noise above the expected level."""
