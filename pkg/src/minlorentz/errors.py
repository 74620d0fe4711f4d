"""Exception types shared across the package.

Every numerical guard that rejects an input raises one of these instead of
returning NaNs, so callers (and the CLI) can map failures to exit codes.
"""


class MinLorentzError(Exception):
    """Base class for all package errors."""


class DomainError(MinLorentzError):
    """Evaluation outside a function's domain (log/sqrt/division, table range)."""


class DegenerateError(MinLorentzError):
    """A curve or surface quantity vanished where the theory requires it nonzero."""


class SingularError(MinLorentzError):
    """Curvature requested at a point where the induced metric coefficient vanishes."""


class RecoveryError(MinLorentzError):
    """Weierstrass data cannot be read off a velocity vector (first chart fails)."""


class PoleError(MinLorentzError):
    """A linear-fractional transformation has a pole inside the working window."""


class ParameterError(MinLorentzError):
    """An invalid parameter value (zero slope, empty interval, ...)."""


class NotSL2Error(MinLorentzError):
    """A matrix expected in SL(2,R) has determinant away from 1."""


class DegenerateDetError(MinLorentzError):
    """A linear-fractional transformation with zero determinant."""


class StencilError(MinLorentzError):
    """A finite-difference stencil touches the boundary or a masked point."""


class NotCanonicalError(MinLorentzError):
    """An operation requiring natural-parameter generators got raw triples."""


class NotGeneralTypeError(MinLorentzError):
    """A generating curve has vanishing squared acceleration somewhere."""


class EmptyGridError(MinLorentzError):
    """All points of a requested grid were singular or masked."""


class IncomparableError(MinLorentzError):
    """Two fields cannot be compared because their valid masks differ too much."""


class QuadratureError(MinLorentzError):
    """Adaptive integration failed to reach the requested tolerance."""


class CancelledError(MinLorentzError):
    """A long-running integration was cancelled by its caller's token."""
