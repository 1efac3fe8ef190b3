"""Double-precision Bessel/Hankel functions and the Helmholtz fundamental solution.

The scalar wrappers below delegate to the cephes routines in ``scipy.special``,
which meet the 1e-12 relative-accuracy budget on the ranges used by the solver.
Vectorised variants operating on numpy arrays are provided for the matrix
assembly hot path.
"""

import numpy as np
from scipy import special

from .errors import DomainError

__all__ = [
    "bessel_j0",
    "bessel_j1",
    "bessel_y0",
    "bessel_y1",
    "hankel1",
    "fundamental_solution",
    "fundamental_solution_gradient",
    "helmholtz_kernel",
    "helmholtz_kernel_gradient",
]


def bessel_j0(x):
    """J0(x) for finite real x."""
    return float(special.j0(x))


def bessel_j1(x):
    """J1(x) for finite real x."""
    return float(special.j1(x))


def bessel_y0(x):
    """Y0(x); defined for x > 0 only."""
    if x <= 0:
        raise DomainError(f"bessel_y0 requires x > 0, got {x}")
    return float(special.y0(x))


def bessel_y1(x):
    """Y1(x); defined for x > 0 only."""
    if x <= 0:
        raise DomainError(f"bessel_y1 requires x > 0, got {x}")
    return float(special.y1(x))


def hankel1(order, x):
    """Hankel function of the first kind, order 0 or 1, for x > 0."""
    if order not in (0, 1):
        raise DomainError(f"hankel1 supports orders 0 and 1, got {order}")
    if x <= 0:
        raise DomainError(f"hankel1 requires x > 0, got {x}")
    return complex(special.hankel1(order, x))


def fundamental_solution(k, p):
    """Outgoing Helmholtz fundamental solution (i/4) H0^(1)(k |p|).

    ``k`` is the wavenumber and ``p`` a planar point (relative to the
    singularity).
    """
    if k <= 0:
        raise DomainError(f"wavenumber must be positive, got {k}")
    r = float(np.hypot(p[0], p[1]))
    if r == 0.0:
        raise DomainError("fundamental solution is singular at the origin")
    return 0.25j * complex(special.hankel1(0, k * r))


def fundamental_solution_gradient(k, p):
    """Gradient of the fundamental solution with respect to p.

    Returns (d1, d2) with dj = -(i/4) k H1^(1)(k |p|) p_j / |p|.
    """
    if k <= 0:
        raise DomainError(f"wavenumber must be positive, got {k}")
    r = float(np.hypot(p[0], p[1]))
    if r == 0.0:
        raise DomainError("fundamental solution is singular at the origin")
    factor = -0.25j * k * complex(special.hankel1(1, k * r))
    return factor * p[0] / r, factor * p[1] / r


def helmholtz_kernel(k, r):
    """Vectorised (i/4) H0^(1)(k r) for an array of positive distances r."""
    return 0.25j * special.hankel1(0, k * r)


def helmholtz_kernel_gradient(k, r):
    """Vectorised radial gradient factor -(i/4) k H1^(1)(k r).

    Multiply by the unit direction components to obtain the Cartesian
    gradient of the kernel.
    """
    return -0.25j * k * special.hankel1(1, k * r)
