"""Closed-form bounds on the lowest positive eigenvalue.

For a rectangle of sides a, b and mass m the square of the first eigenvalue
minus m^2 is sandwiched between a mass-weighted Dirichlet-type lower bound
and two upper bounds: the plain Dirichlet eigenvalue (pi/a)^2 + (pi/b)^2 and
a refined mass-dependent bound built from the first eigenvalue of the
one-dimensional transverse operator. The refined bound extends, numerically,
to arbitrary quadrilaterals through their area and perimeter.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, InvalidIsoperimetricDataError

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class RectangleBounds:
    """Bounds on lambda_1^2 - m^2 for a rectangle."""

    lower_sq: float
    upper_simple_sq: float
    upper_refined_sq: float


def nu1(m_scaled, tol=1e-14):
    """Root of tan(nu)/nu = -1/m in [pi/2, pi); pi/2 at zero mass.

    The left-hand side increases from -inf to 0 on the interval, so plain
    bisection applies; the zero-mass value is the continuity limit.
    """
    if m_scaled < 0:
        raise DomainError(f"mass parameter must be non-negative, got {m_scaled}")
    if m_scaled == 0:
        return _HALF_PI
    lo = _HALF_PI + 1e-12
    hi = math.pi - 1e-12
    target = -1.0 / m_scaled

    def f(nu):
        return math.tan(nu) / nu - target

    # f(lo) -> -inf, f(hi) -> just below 1/m > 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _mass_weight(m, side):
    # ms/(1 + ms) is the underflow-safe form of 1/(1 + (m s)^-1); it
    # degenerates cleanly to 0 at m = 0
    ms = m * side
    return max(ms / (1.0 + ms), 0.5)


def rect_bounds(a, b, m):
    """Lower and upper bounds on lambda_1(a, b)^2 - m^2."""
    if a <= 0 or b <= 0:
        raise DomainError(f"rectangle sides must be positive, got ({a}, {b})")
    if m < 0:
        raise DomainError(f"mass must be non-negative, got {m}")
    pa = math.pi / a
    pb = math.pi / b
    lower = (pa * _mass_weight(m, a)) ** 2 + (pb * _mass_weight(m, b)) ** 2
    simple = pa * pa + pb * pb
    refined = min(
        (nu1(m * a) / a) ** 2 + pb * pb,
        pa * pa + (nu1(m * b) / b) ** 2,
    )
    return RectangleBounds(lower_sq=lower, upper_simple_sq=simple,
                           upper_refined_sq=refined)


def dirac_1d_lambda1(a, m):
    """First positive eigenvalue of the one-dimensional interval operator."""
    if a <= 0:
        raise DomainError(f"interval length must be positive, got {a}")
    return math.sqrt(m * m + (nu1(m * a) / a) ** 2)


def quad_bound(area, perimeter, m):
    """Refined upper bound on lambda_1^2 - m^2 for a quadrilateral.

    Evaluates the rectangle bound at the side pair with the same area and
    perimeter, which requires P^2 >= 16 A.
    """
    if area <= 0:
        raise DomainError(f"area must be positive, got {area}")
    disc = perimeter * perimeter - 16.0 * area
    if disc < 0:
        raise InvalidIsoperimetricDataError(
            f"P^2 = {perimeter**2:.6g} < 16 A = {16 * area:.6g}"
        )
    root = math.sqrt(disc)
    a = (perimeter + root) / 4.0
    b = (perimeter - root) / 4.0
    return rect_bounds(a, b, m).upper_refined_sq


def quad_bound_simple(area, perimeter, m):
    """Mass-independent counterpart of quad_bound, for comparison output."""
    if area <= 0:
        raise DomainError(f"area must be positive, got {area}")
    disc = perimeter * perimeter - 16.0 * area
    if disc < 0:
        raise InvalidIsoperimetricDataError(
            f"P^2 = {perimeter**2:.6g} < 16 A = {16 * area:.6g}"
        )
    root = math.sqrt(disc)
    a = (perimeter + root) / 4.0
    b = (perimeter - root) / 4.0
    return rect_bounds(a, b, m).upper_simple_sq
