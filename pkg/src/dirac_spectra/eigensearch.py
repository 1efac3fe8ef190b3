"""Eigenvalue location: grid scan, golden-section refinement, multiplicity.

Eigenvalues are the local minimisers of the subspace-angle residual s(lam).
A coarse grid walk brackets each dip, golden-section search shrinks the
bracket, and candidates whose refined residual stays below the detection
threshold enter the spectrum in increasing order.
"""

import math
from dataclasses import dataclass, field

from .errors import DomainError, InsufficientWindowError
from .mfs import (
    CORNER_DETECTION_THRESHOLD,
    DETECTION_THRESHOLD,
    MASS_GAP_MARGIN,
    SatSolver,
)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0

DEFAULT_STEP = 0.05
DEFAULT_TOL = 1e-10
DEFAULT_WINDOW_SPAN = 15.0
WINDOW_GROWTH = 1.5
MAX_WINDOW_EXTENSIONS = 6


@dataclass(frozen=True)
class EigenvalueHit:
    lam: float
    residual: float
    multiplicity: int


@dataclass
class SpectrumResult:
    """Detected positive eigenvalues, ordered, with residuals and multiplicities."""

    eigenvalues: list
    window: tuple
    config: object
    evaluations: int = 0

    def lambdas(self):
        """Eigenvalues repeated according to multiplicity."""
        out = []
        for hit in self.eigenvalues:
            out.extend([hit.lam] * hit.multiplicity)
        return out

    def count(self):
        return sum(hit.multiplicity for hit in self.eigenvalues)

    def to_dict(self):
        return {
            "lambda": [h.lam for h in self.eigenvalues],
            "residual": [h.residual for h in self.eigenvalues],
            "multiplicity": [h.multiplicity for h in self.eigenvalues],
            "window": list(self.window),
            "config": {
                "mass": self.config.mass,
                "n_sources": self.config.n_sources,
                "n_collocation": self.config.n_collocation,
                "n_interior": self.config.n_interior,
                "displacement": self.config.displacement,
            },
        }


def eigenvalue_ratio(result, i, j):
    """Ratio lambda_i / lambda_j with 1-based, multiplicity-counted indices."""
    lams = result.lambdas()
    if i < 1 or j < 1 or i > len(lams) or j > len(lams):
        raise DomainError(
            f"eigenvalue index out of range: have {len(lams)}, asked for {i}/{j}"
        )
    return lams[i - 1] / lams[j - 1]


def _grid(window, step):
    lo, hi = window
    if hi <= lo:
        raise DomainError(f"empty scan window {window}")
    n = int(math.floor((hi - lo) / step)) + 1
    return [lo + k * step for k in range(n)]


def scan(cfg, dom, window, step, solver=None):
    """Bracket the local minima of the residual on a uniform grid.

    Returns (lam_left, lam_mid, lam_right) triples with the mid residual
    strictly below both neighbours. The window must start above the mass gap.
    """
    solver = solver or SatSolver(cfg, dom)
    lo, hi = window
    if lo < cfg.mass + MASS_GAP_MARGIN:
        raise DomainError(
            f"scan window must start at or above mass + {MASS_GAP_MARGIN}"
        )
    grid = _grid(window, step)
    values = [solver.sat_value(lam) for lam in grid]
    brackets = []
    for i in range(1, len(grid) - 1):
        if values[i] < values[i - 1] and values[i] < values[i + 1]:
            brackets.append((grid[i - 1], grid[i], grid[i + 1]))
    return brackets


def golden_section(f, a, b, tol):
    """Golden-section minimisation on [a, b]; returns (x_min, f_min, evals).

    Never evaluates outside the initial interval; the final bracket width is
    at most tol.
    """
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x), 1
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    evals = 2
    for _ in range(n - 1):
        if yc < yd:
            b, d, yd = d, c, yc
            h *= INV_PHI
            c = a + INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= INV_PHI
            d = a + INV_PHI * h
            yd = f(d)
        evals += 1
    return (c, yc, evals) if yc < yd else (d, yd, evals)


def refine(bracket, cfg, dom, tol=DEFAULT_TOL, solver=None):
    """Golden-section refinement of one scan bracket down to width ``tol``."""
    left, mid, right = bracket
    if not (left < mid < right):
        raise DomainError(f"not a bracket: {bracket}")
    solver = solver or SatSolver(cfg, dom)
    lam, value, _ = golden_section(solver.sat_value, left, right, tol)
    return lam, value


def default_window(mass):
    return (mass + MASS_GAP_MARGIN, mass + DEFAULT_WINDOW_SPAN)


def compute_spectrum(cfg, dom, k=3, window=None, step=DEFAULT_STEP,
                     tol=DEFAULT_TOL, solver=None, threshold=None,
                     max_extensions=MAX_WINDOW_EXTENSIONS):
    """First ``k`` positive eigenvalues (counted with multiplicity).

    The scan walks the window left to right and stops once enough
    eigenvalues are confirmed; if the window is exhausted it is extended
    geometrically at most ``max_extensions`` times before giving up with
    the partial result attached to the error. The default detection
    threshold is looser on corner domains, whose eigenfunction
    singularities keep the residual minima well above machine precision.
    """
    if k < 1:
        raise DomainError(f"need k >= 1 eigenvalues, got {k}")
    if threshold is None:
        threshold = (
            CORNER_DETECTION_THRESHOLD if getattr(dom, "has_corners", False)
            else DETECTION_THRESHOLD
        )
    solver = solver or SatSolver(cfg, dom)
    if window is None:
        window = default_window(cfg.mass)
    lo, hi = window
    lo = max(lo, cfg.mass + MASS_GAP_MARGIN)

    hits = []
    evaluations = 0
    window_hi = hi

    def found_enough():
        return sum(h.multiplicity for h in hits) >= k

    prev_lam = None
    prev_val = None
    prev_prev = None
    extensions = 0
    lam = lo
    while True:
        value = solver.sat_value(lam)
        evaluations += 1
        if (
            prev_prev is not None
            and prev_val < prev_prev
            and prev_val < value
        ):
            lam_star, s_star = refine(
                (prev_lam - step, prev_lam, lam), cfg, dom, tol=tol, solver=solver
            )
            evaluations += 1
            if s_star <= threshold:
                mult = solver.multiplicity(lam_star, cap=threshold)
                evaluations += 1
                if hits and abs(lam_star - hits[-1].lam) <= 10.0 * max(tol, 1e-12):
                    last = hits[-1]
                    hits[-1] = EigenvalueHit(
                        last.lam,
                        min(last.residual, s_star),
                        max(last.multiplicity, mult),
                    )
                else:
                    hits.append(EigenvalueHit(lam_star, s_star, mult))
                if found_enough():
                    break
        prev_prev = prev_val
        prev_val = value
        prev_lam = lam
        lam += step
        if lam > window_hi:
            if extensions >= max_extensions:
                partial = SpectrumResult(hits, (lo, window_hi), cfg, evaluations)
                raise InsufficientWindowError(
                    f"found {partial.count()} of {k} eigenvalues in "
                    f"({lo}, {window_hi})",
                    partial=partial,
                )
            window_hi = cfg.mass + (window_hi - cfg.mass) * WINDOW_GROWTH
            extensions += 1

    return SpectrumResult(hits, (lo, window_hi), cfg, evaluations)
