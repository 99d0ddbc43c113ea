"""Elliptic integrals of the second kind.

Domain-checked wrappers around scipy's double-precision routines.  The
degenerate modulus ``eps = 1`` is handled analytically because the integrand
collapses to ``cos(t)`` there and the library routine is not needed.
"""

import math

from scipy import special

from .errors import DomainError

_HALF_PI = math.pi / 2.0


def incomplete_elliptic_e(phi: float, eps: float) -> float:
    """Evaluate ``E(phi, eps) = integral_0^phi sqrt(1 - eps^2 sin^2 t) dt``.

    Args:
        phi: Amplitude in radians, ``0 <= phi <= pi/2``.
        eps: Modulus, ``0 <= eps <= 1``.

    Returns:
        Value of the incomplete elliptic integral of the second kind.

    Raises:
        DomainError: If either argument is outside its interval or is NaN.
    """
    if not 0.0 <= phi <= _HALF_PI:
        raise DomainError(f"amplitude must lie in [0, pi/2], got {phi!r}")
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"modulus must lie in [0, 1], got {eps!r}")
    if eps == 1.0:
        return math.sin(phi)
    return float(special.ellipeinc(phi, eps * eps))


def complete_elliptic_e(eps: float) -> float:
    """Evaluate the complete integral ``E(eps) = E(pi/2, eps)``.

    Raises:
        DomainError: If ``eps`` is outside ``[0, 1]`` or is NaN.
    """
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"modulus must lie in [0, 1], got {eps!r}")
    if eps == 1.0:
        return 1.0
    return float(special.ellipe(eps * eps))
