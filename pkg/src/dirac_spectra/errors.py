"""Exception types shared across the package."""


class DiracSpectraError(Exception):
    """Base class for all package errors."""


class DomainError(DiracSpectraError, ValueError):
    """Argument outside the mathematical domain of a function."""


class InvalidGeometryError(DiracSpectraError, ValueError):
    """Self-intersecting, mis-oriented or otherwise unusable geometry."""


class InvalidShapeError(DiracSpectraError, ValueError):
    """Fourier radial shape with non-positive radius somewhere."""


class FitFailureError(DiracSpectraError, ValueError):
    """Boundary points cannot be represented by a radial function."""


class PlacementError(DiracSpectraError, ValueError):
    """A source point landed inside the closed domain."""


class InvalidSpectralParameterError(DiracSpectraError, ValueError):
    """Spectral parameter at or below the mass gap."""


class DegenerateConfigurationError(DiracSpectraError, RuntimeError):
    """The collocation matrix is structurally rank deficient."""


class NotAnEigenvalueError(DiracSpectraError, RuntimeError):
    """Residual at the candidate spectral parameter is above threshold."""


class InvalidIsoperimetricDataError(DiracSpectraError, ValueError):
    """Area/perimeter pair with P^2 < 16 A."""


class InsufficientWindowError(DiracSpectraError, RuntimeError):
    """Window extension cap reached before enough eigenvalues were found.

    Carries the partial spectrum in ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConfigError(DiracSpectraError, ValueError):
    """Invalid run configuration."""
