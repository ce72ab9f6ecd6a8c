"""Exception types raised across the package."""


class GaussCloneError(Exception):
    """Base class for all package errors."""


class DomainError(GaussCloneError, ValueError):
    """A parameter lies outside the physically or mathematically allowed range."""


class UnsupportedStateError(GaussCloneError, ValueError):
    """The requested quantity is not implemented for this kind of state or ensemble."""


class InvalidStateError(GaussCloneError, ValueError):
    """A mean vector or covariance matrix does not describe a physical Gaussian state."""
