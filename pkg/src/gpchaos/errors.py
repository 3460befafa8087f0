"""Exception and warning types shared across the package."""


class ValidationError(ValueError):
    """A value violates a documented invariant; the message names it."""


class InvalidConfig(ValidationError):
    """Integrator, Lyapunov or scan settings are unusable."""


class ParseError(ValueError):
    """A config document or command line could not be parsed."""


class GridMiss(LookupError):
    """A requested coordinate is not a node of the scan grid."""


class DegenerateSeparation(RuntimeWarning):
    """The companion trajectory collapsed onto the fiducial one and was restarted."""
