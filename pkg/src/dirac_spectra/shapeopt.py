"""Shape optimisation of eigenvalue functionals over Fourier radial domains.

Objectives (single eigenvalues or eigenvalue ratios at fixed mass) are
evaluated on unit-area star-shaped domains defined by a coefficient vector,
and minimised or maximised with a derivative-free Nelder-Mead simplex.
Invalid coefficient vectors (non-positive radius) are mapped to a large
penalty so the simplex can retreat without constraint machinery.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import SpectralConfig
from .errors import DiracSpectraError, DomainError, InsufficientWindowError
from .eigensearch import compute_spectrum
from .geometry import FourierShape, disk_shape, fourier_domain
from .mfs import SatSolver

PENALTY = 1e6
# stop early when the radius pinches towards a disconnected shape
PINCH_RADIUS = 0.02

MINIMIZE_KINDS = {"min_lambda1": 1, "min_lambda2": 2, "min_lambda3": 3}
MAXIMIZE_KINDS = {"max_ratio_21": (2, 1), "max_ratio_31": (3, 1)}


@dataclass(frozen=True)
class Objective:
    """What to optimise: an eigenvalue level or a ratio, at a fixed mass."""

    kind: str
    mass: float = 1.0

    def __post_init__(self):
        if self.kind not in MINIMIZE_KINDS and self.kind not in MAXIMIZE_KINDS:
            raise DomainError(f"unknown objective kind {self.kind!r}")

    @property
    def maximize(self):
        return self.kind in MAXIMIZE_KINDS

    @property
    def order(self):
        """Highest eigenvalue index the objective needs."""
        if self.kind in MINIMIZE_KINDS:
            return MINIMIZE_KINDS[self.kind]
        return max(MAXIMIZE_KINDS[self.kind])


@dataclass
class OptimizationTrace:
    """Best-so-far values and vectors per simplex iteration."""

    iterations: list = field(default_factory=list)
    final_shape: FourierShape = None
    final_value: float = None
    final_eigenvalues: list = None
    evaluations: int = 0
    pinched: bool = False

    def best_values(self):
        return [v for v, _ in self.iterations]

    def best_vector(self):
        return self.iterations[-1][1]

    def to_records(self):
        return [
            {"iter": i, "best_value": v, "coefficients": list(vec)}
            for i, (v, vec) in enumerate(self.iterations)
        ]


def shape_from_vector(v):
    """Fourier shape from a flat coefficient vector (a0, a_1.., b_1..).

    The induced domain always has unit area; scaling the vector leaves the
    shape unchanged.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or len(v) % 2 != 1:
        raise DomainError("coefficient vector must have odd length 2M+1")
    if not np.any(v):
        raise DomainError("coefficient vector must be non-zero")
    m = (len(v) - 1) // 2
    shape = FourierShape(v[0], v[1 : m + 1], v[m + 1 :])
    if not shape.is_positive():
        raise DomainError("radius function is not positive everywhere")
    return shape


# reduced-accuracy solver used inside the optimisation loop; the small
# displacement matters for strongly non-convex shapes, whose solutions
# continue analytically only a short distance past the boundary
FAST_SOLVER = SpectralConfig(n_sources=160, n_interior=80, displacement=0.03)
FAST_STEP = 0.1
FAST_TOL = 1e-3
# lobed shapes keep the residual dips well above the smooth-domain
# detection threshold at optimisation resolutions (genuine refined minima
# up to ~0.25, background near 1), so the loop uses looser cuts
FAST_THRESHOLD = 0.4
FINAL_THRESHOLD = 0.2


def evaluate_objective(obj, v, solver_cfg=None, step=FAST_STEP, tol=FAST_TOL,
                       window=None, threshold=None, max_extensions=None):
    """Objective value for a coefficient vector; penalty if the shape fails.

    Maximisation objectives are negated so the simplex always minimises.
    """
    cfg = (solver_cfg or FAST_SOLVER).with_mass(obj.mass)
    try:
        shape = shape_from_vector(v)
        dom = fourier_domain(shape, cfg)
        kwargs = {} if max_extensions is None else {
            "max_extensions": max_extensions
        }
        spectrum = compute_spectrum(
            cfg, dom, k=obj.order, window=window, step=step, tol=tol,
            threshold=threshold, **kwargs,
        )
    except (DiracSpectraError, np.linalg.LinAlgError):
        return PENALTY, None
    lams = spectrum.lambdas()
    if obj.kind in MINIMIZE_KINDS:
        return lams[MINIMIZE_KINDS[obj.kind] - 1], lams
    i, j = MAXIMIZE_KINDS[obj.kind]
    return -lams[i - 1] / lams[j - 1], lams


# solver used to re-verify every new best vertex: an undetected residual
# dip silently shifts the eigenvalue indices, and for maximisation
# objectives an overestimated ratio would stick as the incumbent forever
VERIFY_SOLVER = SpectralConfig(n_sources=250, n_interior=80,
                               displacement=0.03)
VERIFY_STEP = 0.05
# high-accuracy settings for the final re-evaluation of the optimum
FINAL_SOLVER = SpectralConfig(n_sources=300, n_interior=228,
                              displacement=0.03)
FINAL_STEP = 0.05
FINAL_TOL = 1e-10


def nelder_mead(f, v0, max_iter=300, init_scale=0.1, tol=1e-8,
                stop_condition=None):
    """Standard Nelder-Mead simplex minimisation with a best-value trace.

    Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
    Stops on simplex diameter below ``tol``, the iteration budget, or when
    ``stop_condition(best_vector)`` returns true.
    """
    v0 = np.asarray(v0, dtype=float)
    dim = len(v0)
    simplex = [v0.copy()]
    for i in range(dim):
        vertex = v0.copy()
        vertex[i] += init_scale
        simplex.append(vertex)
    values = [f(v) for v in simplex]
    evaluations = len(simplex)
    trace = OptimizationTrace()

    def record():
        order = np.argsort(values)
        simplex[:] = [simplex[i] for i in order]
        values[:] = [values[i] for i in order]
        trace.iterations.append((values[0], simplex[0].copy()))

    record()
    for _ in range(max_iter):
        diameter = max(np.linalg.norm(v - simplex[0]) for v in simplex[1:])
        if diameter <= tol:
            break
        if stop_condition is not None and stop_condition(simplex[0]):
            trace.pinched = True
            break
        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        reflected = centroid + (centroid - worst)
        fr = f(reflected)
        evaluations += 1
        if fr < values[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            fe = f(expanded)
            evaluations += 1
            if fe < fr:
                simplex[-1], values[-1] = expanded, fe
            else:
                simplex[-1], values[-1] = reflected, fr
        elif fr < values[-2]:
            simplex[-1], values[-1] = reflected, fr
        else:
            contracted = centroid + 0.5 * (worst - centroid)
            fc = f(contracted)
            evaluations += 1
            if fc < values[-1]:
                simplex[-1], values[-1] = contracted, fc
            else:
                # shrink towards the best vertex
                for i in range(1, len(simplex)):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    values[i] = f(simplex[i])
                evaluations += dim
        record()
    trace.evaluations = evaluations
    return trace


def _pad_to_modes(shape, n_modes):
    a = list(shape.a)[:n_modes]
    b = list(shape.b)[:n_modes]
    a += [0.0] * (n_modes - len(a))
    b += [0.0] * (n_modes - len(b))
    return np.concatenate(([shape.a0], a, b))


def _min_radius(v):
    try:
        shape = shape_from_vector(v)
    except DomainError:
        return 0.0
    theta = np.linspace(0.0, 2.0 * np.pi, 1024, endpoint=False)
    return float(np.min(shape.radius(theta)))


def optimize_shape(obj, init=None, n_modes=8, budget=300, solver_cfg=None,
                   init_scale=0.1, step=FAST_STEP, tol=FAST_TOL,
                   final_cfg=None, verify_cfg=None):
    """Nelder-Mead optimisation of an eigenvalue objective over shapes.

    The starting shape's coefficients are padded or truncated to ``n_modes``
    modes. Runs are cut short, and flagged, when the boundary radius pinches
    below the disconnection threshold. Every new best vertex is re-evaluated
    with ``verify_cfg`` before it is allowed to stand, so a missed residual
    dip cannot lock in a mis-indexed objective value. For maximisation
    objectives the trace holds the (positive) objective values.
    """
    if init is None:
        init = disk_shape()
    v0 = _pad_to_modes(init, n_modes)
    # bounded scan window: a failed detection must fail fast, since the
    # simplex treats it as a penalty vertex and moves on
    cold = (obj.mass + 1e-6, obj.mass + 9.0)
    # the unit-area disk minimises lambda_1 at fixed mass, so its ground
    # state anchors the scan start (keeping the indexing absolute) and a
    # sanity cap on detected lambda_1 values
    _, disk_lams = evaluate_objective(
        Objective("min_lambda1", mass=obj.mass), [1.0, 0.0, 0.0],
        solver_cfg=solver_cfg, step=step, tol=tol, window=cold,
        threshold=FAST_THRESHOLD, max_extensions=2,
    )
    if disk_lams is not None:
        lam1_disk = disk_lams[0]
        window = (max(obj.mass + 1e-6, lam1_disk - 0.5), cold[1])
    else:
        lam1_disk = None
        window = cold
    state = {"best": None}

    def f(v):
        val, lams = evaluate_objective(
            obj, v, solver_cfg=solver_cfg, step=step, tol=tol,
            window=window, threshold=FAST_THRESHOLD, max_extensions=2,
        )
        if lams is None:
            return PENALTY
        if lam1_disk is not None and lams[0] > 1.7 * lam1_disk:
            # lambda_1 cannot sit that far above the disk's: the true
            # ground-state dip was missed and the indices are shifted
            return PENALTY
        if lams[obj.order - 1] - lams[0] > 5.0:
            # a spectral spread this wide means intermediate dips were
            # missed and higher eigenvalues took their index
            return PENALTY
        if state["best"] is None or val < state["best"]:
            val, lams = evaluate_objective(
                obj, v, solver_cfg=verify_cfg or VERIFY_SOLVER,
                step=VERIFY_STEP, tol=tol,
                window=(max(obj.mass + 1e-6, lams[0] - 0.4),
                        lams[obj.order - 1] + 0.4),
                threshold=FINAL_THRESHOLD, max_extensions=1,
            )
            if lams is None:
                return PENALTY
            if state["best"] is None or val < state["best"]:
                state["best"] = val
        return val

    trace = nelder_mead(
        f, v0, max_iter=budget, init_scale=init_scale,
        stop_condition=lambda v: _min_radius(v) < PINCH_RADIUS,
    )
    if obj.maximize:
        trace.iterations = [(-val, vec) for val, vec in trace.iterations]
    best = trace.iterations[-1][1]
    trace.final_shape = shape_from_vector(best)
    final_val, final_lams = evaluate_objective(
        obj, best, solver_cfg=final_cfg or FINAL_SOLVER,
        step=FINAL_STEP, tol=FINAL_TOL, threshold=FINAL_THRESHOLD,
        window=window, max_extensions=2,
    )
    if final_lams is not None:
        trace.final_value = -final_val if obj.maximize else final_val
        trace.final_eigenvalues = list(final_lams)
    return trace
