"""Exception types shared across the package."""


class MCIError(Exception):
    """Base class for all errors raised by mcinterp."""


class AliasError(MCIError, ValueError):
    """A grid is too small to hold a spectrum without frequency aliasing."""


class SizeMismatch(MCIError, ValueError):
    """Array or grid dimensions disagree with what the operation expects."""


class BandMismatch(MCIError, ValueError):
    """Two objects were built for different frequency bands."""


class SingularMatrix(MCIError, ArithmeticError):
    """A per-frequency channel matrix is numerically singular."""

    def __init__(self, n: int):
        super().__init__(f"channel matrix H_n is singular at n={n}; "
                         f"add {n} to null_band if a(n) is known to vanish")
        self.n = n


class ModeMismatch(MCIError, ValueError):
    """The requested estimation mode needs channel rows that are absent."""


class ZeroReference(MCIError, ZeroDivisionError):
    """A relative error was requested against an all-zero reference."""


class ZeroVariance(MCIError, ZeroDivisionError):
    """A correlation was requested for a constant image."""


class NearSingularity(MCIError, ValueError):
    """A closed-form kernel was evaluated too close to a removable singularity."""


class DimensionNotDivisible(MCIError, ValueError):
    """Image dimensions are not divisible by the downsampling factor."""


class TooShort(MCIError, ValueError):
    """A line of samples is too short for the requested stencil."""
