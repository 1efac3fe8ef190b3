"""Independent reference implementations used to cross-check the package.

Everything here is computed from ascending power series and bisection only,
with no dependency on the package under test or on scipy, so agreement is
evidence rather than tautology. The series converge comfortably in double
precision for the argument ranges exercised by the tests (|x| <= ~15).
"""

import math

EULER_GAMMA = 0.5772156649015328606

# first positive root of J0(x) = J1(x); the zero-mass unit disk's lowest
# positive eigenvalue
DISK_LAMBDA1_M0 = 1.434695650819


def _harmonic(n):
    return sum(1.0 / i for i in range(1, n + 1))


def jn_series(n, x):
    """Bessel J_n(x) for integer n >= 0 by the ascending series."""
    if n < 0:
        raise ValueError("use jn_series(-n) identity explicitly")
    half = 0.5 * x
    term = half**n / math.factorial(n)
    total = term
    for k in range(1, 60):
        term *= -(half * half) / (k * (n + k))
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    return total


def j0_series(x):
    return jn_series(0, x)


def j1_series(x):
    return jn_series(1, x)


def y0_series(x):
    """Bessel Y0(x) for x > 0: logarithmic term plus harmonic-number series."""
    if x <= 0:
        raise ValueError("y0 series needs x > 0")
    half = 0.5 * x
    total = 0.0
    term = 1.0
    for k in range(1, 60):
        term *= -(half * half) / (k * k)
        contrib = -term * _harmonic(k)
        total += contrib
        if abs(contrib) < 1e-18 * max(abs(total), 1e-300):
            break
    return (2.0 / math.pi) * ((math.log(half) + EULER_GAMMA) * j0_series(x) + total)


def y1_series(x):
    """Bessel Y1(x) for x > 0 (ascending series with digamma weights)."""
    if x <= 0:
        raise ValueError("y1 series needs x > 0")
    half = 0.5 * x
    total = 0.0
    term = 1.0  # (-x^2/4)^k / (k! (k+1)!)
    for k in range(0, 60):
        if k > 0:
            term *= -(half * half) / (k * (k + 1))
        psi_sum = -2.0 * EULER_GAMMA + _harmonic(k) + _harmonic(k + 1)
        contrib = term * psi_sum
        total += contrib
        if k > 2 and abs(contrib) < 1e-18 * max(abs(total), 1e-300):
            break
    return (
        (2.0 / math.pi) * math.log(half) * j1_series(x)
        - 2.0 / (math.pi * x)
        - (x / (2.0 * math.pi)) * total
    )


def disk_secular(n, lam, mass, radius):
    """Boundary determinant for the disk's angular-momentum-n radial mode.

    Roots in lam > mass are eigenvalues: k J_{n+1}(kR) = (lam + m) J_n(kR)
    with k = sqrt(lam^2 - m^2), using J_{-n} = (-1)^n J_n for negative n.
    """
    k = math.sqrt(lam * lam - mass * mass)

    def j(order, x):
        if order >= 0:
            return jn_series(order, x)
        return (-1.0) ** (-order) * jn_series(-order, x)

    return k * j(n + 1, k * radius) - (lam + mass) * j(n, k * radius)


def disk_eigenvalues(mass, radius, count, n_range=4, lam_max=None):
    """First ``count`` positive disk eigenvalues from the secular equations.

    Scans each angular sector on a fine grid and bisects every sign change;
    the merged, sorted list is the oracle spectrum (degeneracies appear as
    repeats across sectors).
    """
    if lam_max is None:
        lam_max = mass + 30.0 / radius
    roots = []
    for n in range(-n_range, n_range + 1):
        f = lambda lam: disk_secular(n, lam, mass, radius)
        steps = 4000
        prev_lam = mass + 1e-9
        prev_val = f(prev_lam)
        for i in range(1, steps + 1):
            lam = mass + 1e-9 + (lam_max - mass) * i / steps
            val = f(lam)
            if prev_val == 0.0:
                roots.append(prev_lam)
            elif prev_val * val < 0.0:
                lo, hi = prev_lam, lam
                for _ in range(80):
                    mid = 0.5 * (lo + hi)
                    if f(lo) * f(mid) <= 0.0:
                        hi = mid
                    else:
                        lo = mid
                roots.append(0.5 * (lo + hi))
            prev_lam, prev_val = lam, val
    roots.sort()
    return roots[:count]


def golden_minimum(f, a, b, tol=1e-12):
    """Plain golden-section minimiser, written independently of the package."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)
