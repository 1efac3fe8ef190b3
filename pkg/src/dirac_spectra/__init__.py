"""Numerical toolkit for eigenvalues of the planar Dirac operator with
infinite-mass boundary conditions: fundamental-solution collocation solver,
closed-form bounds, domain generators and shape optimisation."""

from .bounds import RectangleBounds, dirac_1d_lambda1, nu1, quad_bound, rect_bounds
from .config import SpectralConfig
from .eigensearch import (
    SpectrumResult,
    compute_spectrum,
    eigenvalue_ratio,
    refine,
    scan,
)
from .estimator import DiracSpectrumSolver
from .geometry import (
    BoundarySample,
    DiscretizedDomain,
    FourierShape,
    TriangleParam,
    admissible_triangle,
    disjoint_disks,
    disk,
    disk_shape,
    fit_fourier,
    fourier_domain,
    halton_interior,
    interpolate_shapes,
    polygon,
    random_convex_polygon,
    random_quadrilateral,
    rectangle,
    regular_polygon,
    source_points,
)
from .mfs import (
    EigenfunctionCoefficients,
    SatSolver,
    assemble,
    boundary_operator_row,
    eigenfunction,
    evaluate_spinor,
    evaluate_spinor_grid,
    sat_value,
)
from .shapeopt import (
    Objective,
    OptimizationTrace,
    evaluate_objective,
    nelder_mead,
    optimize_shape,
    shape_from_vector,
)

__version__ = "0.1.0"
