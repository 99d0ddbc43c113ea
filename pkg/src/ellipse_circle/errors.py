"""Exception types shared across the package."""


class EllipseCircleError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EllipseCircleError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CaseError(EllipseCircleError, ValueError):
    """An operation was invoked for a radius regime in which it is undefined."""


class AssumptionError(EllipseCircleError, ValueError):
    """The one-circle lattice assumption ``2(a + r) <= min(s, t)`` fails."""


class DegeneratePoseError(EllipseCircleError):
    """A tangency was found where a transversal crossing count was required."""


class ResolutionError(EllipseCircleError):
    """Crossing detection produced an impossible count (grid too coarse for tol)."""


class QuadratureError(EllipseCircleError):
    """Numerical quadrature failed its convergence check."""


class InternalConsistencyError(EllipseCircleError):
    """Two closed forms that must agree differed beyond tolerance."""
