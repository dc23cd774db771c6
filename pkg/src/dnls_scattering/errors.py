"""Exception hierarchy shared by all modules."""


class DNLSError(Exception):
    """Base class for every error raised by this package."""

    module = "dnls_scattering"


class AdmissibilityError(DNLSError, ValueError):
    module = "words"


class DomainError(DNLSError, ValueError):
    """Grid too small for the potential (boundary decay violated)."""

    module = "potential"


class RegionError(DNLSError, ValueError):
    """Spectral parameter outside the closed upper region Im(lambda^2) >= 0."""

    module = "scattering"


class ResolutionError(DNLSError, RuntimeError):
    """Oscillation or step size not resolved by the grid / integrator."""

    module = "scattering"


class SingularityError(DNLSError, ValueError):
    module = "spectral"


class AliasingError(DNLSError, ValueError):
    module = "spectral"


class FitError(DNLSError, RuntimeError):
    module = "spectral"


class InstabilityError(DNLSError, RuntimeError):
    module = "evolution"


class BoundaryContaminationError(DNLSError, RuntimeError):
    module = "evolution"


class SizeError(DNLSError, ValueError):
    module = "variation"
