"""Exception taxonomy shared by all modules."""


class DunklOscError(Exception):
    """Base class for all library errors."""


class ArgumentError(DunklOscError, ValueError):
    """Structurally invalid argument (bad shapes, orderings, ranges)."""


class DomainError(DunklOscError, ValueError):
    """Mathematically inadmissible input (negative Bessel argument,
    non-integrable weight exponent, negative power at a vanishing point)."""


class ResolutionError(DunklOscError, ValueError):
    """Requested frequency content exceeds what the grid can resolve
    (fewer than the required nodes per kernel wavelength)."""


class GateError(DunklOscError, RuntimeError):
    """A ratio sweep was refused because the identity suite failed at the
    chosen resolution."""
