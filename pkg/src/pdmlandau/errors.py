"""Exception types shared across the package."""


class PdmLandauError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PdmLandauError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class NonUniformField(PdmLandauError):
    """The effective magnetic field failed the uniformity check."""


class PoleError(PdmLandauError, ValueError):
    """A series denominator hit a pole before the series terminated."""


class NoConvergence(PdmLandauError):
    """A series failed to converge within the term budget."""


class UnsupportedProfile(PdmLandauError, ValueError):
    """Mass profile power outside the supported set {1, 2}."""


class GridTooCoarse(PdmLandauError, ValueError):
    """Too few samples for a finite-difference evaluation."""


class SingularCoefficient(PdmLandauError, ValueError):
    """A coefficient evaluated to a non-finite value on the grid."""


class FactorizationBreakdown(PdmLandauError):
    """Repeated zero pivots in the shifted tridiagonal factorization."""


class SlowConvergence(PdmLandauError):
    """Inverse iteration failed to reach the residual target."""


class NotNormalizable(PdmLandauError, ValueError):
    """Closed-form state is not square-integrable for these parameters."""


class ConfigError(PdmLandauError, ValueError):
    """A run configuration file failed validation."""
