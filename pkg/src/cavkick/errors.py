"""Exception types raised by cavkick."""


class CavkickError(ValueError):
    """Base class for all validation failures in this package."""


class NormalizationError(CavkickError):
    pass


class NonUnitaryError(CavkickError):
    pass


class NotHermitianError(CavkickError):
    pass


class ScheduleError(CavkickError):
    pass


class PhysicalityError(CavkickError):
    """A density matrix is not Hermitian, not positive, or has the wrong trace."""


class TraceLeakError(CavkickError):
    """Numerical trace drift beyond tolerance during a mixed-state run."""


class ConfigError(CavkickError):
    pass
