"""Exception and warning types raised by freecoupling."""


class FreeCouplingError(Exception):
    """Base class for all package errors."""


class DomainError(FreeCouplingError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class PoleError(DomainError):
    """A material response is evaluated exactly at a resonance."""


class ConfigError(FreeCouplingError, ValueError):
    """A run configuration failed validation."""


class ConvergenceError(FreeCouplingError, RuntimeError):
    """A numerical routine did not reach its requested tolerance."""


class NoSignChangeError(FreeCouplingError, ValueError):
    """A root bracket does not contain a sign change."""


class NoModeError(FreeCouplingError):
    """No guided mode exists for the requested geometry."""


class AmbiguousRegimeError(FreeCouplingError, ValueError):
    """No single dispersion term dominates the phase-mismatch expansion."""


class BandwidthOverlapError(FreeCouplingError, ValueError):
    """An integration window contains more than one resonance."""


class GridPointError(FreeCouplingError):
    """Wraps a failure at a specific point of a parameter sweep."""

    def __init__(self, point, cause):
        self.point = dict(point)
        self.cause = cause
        super().__init__(f"failure at grid point {self.point}: {type(cause).__name__}: {cause}")

    def __reduce__(self):
        return (GridPointError, (self.point, self.cause))


class PhaseMatchingWarning(UserWarning):
    """The electron velocity is far from the mode phase velocity."""
